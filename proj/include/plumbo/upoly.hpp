#ifndef PLUMBO_UPOLY_HPP
#define PLUMBO_UPOLY_HPP

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace plumbo {

/// Polynomial in U over the two-element field, stored as a bitset of
/// exponents.
class UPolynomial {
public:
  UPolynomial() = default;

  static UPolynomial monomial(std::int64_t exponent) {
    if (exponent < 0) throw std::domain_error("negative U exponent");
    UPolynomial p;
    p.flip(static_cast<std::size_t>(exponent));
    return p;
  }
  static UPolynomial one() { return monomial(0); }

  bool is_zero() const { return words_.empty(); }
  /// Degree; -1 for the zero polynomial.
  std::int64_t degree() const {
    if (words_.empty()) return -1;
    const auto top = words_.back();
    return static_cast<std::int64_t>(64 * (words_.size() - 1) + 63 - __builtin_clzll(top));
  }
  /// Smallest exponent with a nonzero coefficient; -1 for zero.
  std::int64_t lowest() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      if (words_[w]) return static_cast<std::int64_t>(64 * w + __builtin_ctzll(words_[w]));
    return -1;
  }
  bool coefficient(std::int64_t e) const {
    const auto w = static_cast<std::size_t>(e) / 64;
    return e >= 0 && w < words_.size() && ((words_[w] >> (e % 64)) & 1U);
  }
  bool is_monomial() const { return !is_zero() && lowest() == degree(); }

  std::vector<std::int64_t> exponents() const {
    std::vector<std::int64_t> out;
    for (std::int64_t e = 0; e <= degree(); ++e)
      if (coefficient(e)) out.push_back(e);
    return out;
  }

  friend UPolynomial operator+(UPolynomial a, const UPolynomial& b) {
    if (a.words_.size() < b.words_.size()) a.words_.resize(b.words_.size(), 0);
    for (std::size_t i = 0; i < b.words_.size(); ++i) a.words_[i] ^= b.words_[i];
    a.trim();
    return a;
  }
  UPolynomial& operator+=(const UPolynomial& b) { return *this = *this + b; }

  friend UPolynomial operator*(const UPolynomial& a, const UPolynomial& b) {
    UPolynomial out;
    for (auto e : b.exponents()) out += a.shifted(e);
    return out;
  }

  /// Multiplication by U^e.
  UPolynomial shifted(std::int64_t e) const {
    UPolynomial out;
    for (auto x : exponents()) out.flip(static_cast<std::size_t>(x + e));
    return out;
  }

  /// Euclidean division: a = q*b + r with deg r < deg b.
  friend std::pair<UPolynomial, UPolynomial> divmod(UPolynomial a, const UPolynomial& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    UPolynomial q;
    const auto db = b.degree();
    while (!a.is_zero() && a.degree() >= db) {
      const auto s = a.degree() - db;
      q.flip(static_cast<std::size_t>(s));
      a += b.shifted(s);
    }
    return {q, a};
  }

  friend bool operator==(const UPolynomial&, const UPolynomial&) = default;

private:
  void flip(std::size_t e) {
    if (words_.size() <= e / 64) words_.resize(e / 64 + 1, 0);
    words_[e / 64] ^= (std::uint64_t{1} << (e % 64));
    trim();
  }
  void trim() {
    while (!words_.empty() && words_.back() == 0) words_.pop_back();
  }

  std::vector<std::uint64_t> words_;
};

inline UPolynomial gcd(UPolynomial a, UPolynomial b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace plumbo

#endif  // PLUMBO_UPOLY_HPP
