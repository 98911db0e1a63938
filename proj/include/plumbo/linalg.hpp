#ifndef PLUMBO_LINALG_HPP
#define PLUMBO_LINALG_HPP

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "plumbo/rational.hpp"

namespace plumbo {

using IntVector = std::vector<std::int64_t>;
using RatVector = std::vector<Rational>;
using IntMatrix = std::vector<IntVector>;
using RatMatrix = std::vector<RatVector>;

class SingularMatrixError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

namespace linalg {

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (auto v : m[i]) r[i].emplace_back(v);
  return r;
}

/// Fraction-free (Bareiss) determinant; exact for the small matrices we see.
inline std::int64_t determinant(IntMatrix a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  std::vector<std::vector<__int128>> m(n, std::vector<__int128>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a[i][j];
  int sign = 1;
  __int128 prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[p], m[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return static_cast<std::int64_t>(sign * m[n - 1][n - 1]);
}

/// Leading principal minors D_1..D_n.
inline IntVector leading_minors(const IntMatrix& a) {
  IntVector out;
  for (std::size_t k = 1; k <= a.size(); ++k) {
    IntMatrix sub(k, IntVector(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub[i][j] = a[i][j];
    out.push_back(determinant(sub));
  }
  return out;
}

/// Sylvester: negative definite iff (-1)^k D_k > 0 for all k.
inline bool is_negative_definite(const IntMatrix& a) {
  auto minors = leading_minors(a);
  for (std::size_t k = 0; k < minors.size(); ++k) {
    const bool odd = (k % 2) == 0;  // size k+1
    if (odd ? minors[k] >= 0 : minors[k] <= 0) return false;
  }
  return true;
}

inline RatMatrix inverse(const IntMatrix& a) {
  const std::size_t n = a.size();
  RatMatrix m = to_rational(a);
  RatMatrix inv(n, RatVector(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m[p][c] == Rational(0)) ++p;
    if (p == n) throw SingularMatrixError("singular intersection form");
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    const Rational piv = m[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] /= piv;
      inv[c][j] /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == Rational(0)) continue;
      const Rational f = m[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

inline RatVector multiply(const RatMatrix& m, const RatVector& v) {
  RatVector out(m.size(), Rational(0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j)
      if (v[j] != Rational(0)) out[i] += m[i][j] * v[j];
  return out;
}

inline IntVector multiply(const IntMatrix& m, const IntVector& v) {
  IntVector out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

inline Rational dot(const RatVector& a, const RatVector& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline RatVector to_rational(const IntVector& v) { return RatVector(v.begin(), v.end()); }

/// v^T Q v for an exact rational Q.
inline Rational quadratic(const RatMatrix& q, const IntVector& v) {
  return dot(to_rational(v), multiply(q, to_rational(v)));
}

}  // namespace linalg
}  // namespace plumbo

#endif  // PLUMBO_LINALG_HPP
