#ifndef PLUMBO_SPINC_HPP
#define PLUMBO_SPINC_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "plumbo/errors.hpp"
#include "plumbo/graph.hpp"
#include "plumbo/linalg.hpp"

namespace plumbo {

/// Values K(v_i) of a cohomology class on the vertex basis.
struct CharVector {
  IntVector values;

  std::size_t size() const { return values.size(); }
  std::int64_t operator[](std::size_t i) const { return values[i]; }
  friend auto operator<=>(const CharVector&, const CharVector&) = default;
};

/// Exact data of a negative definite intersection form, shared by every
/// lattice computation on one graph.
class QuadraticForm {
public:
  explicit QuadraticForm(const PlumbingGraph& g) : graph_(g), matrix_(g.intersection_matrix()) {
    require_negative_definite(g, "quadratic form");
    inverse_ = linalg::inverse(matrix_);
    determinant_ = linalg::determinant(matrix_);
    factor();
  }

  const PlumbingGraph& graph() const { return graph_; }
  std::size_t size() const { return matrix_.size(); }
  const IntMatrix& matrix() const { return matrix_; }
  const RatMatrix& inverse() const { return inverse_; }
  std::int64_t determinant() const { return determinant_; }

  bool is_characteristic(const CharVector& k) const {
    if (k.size() != size()) return false;
    for (std::size_t i = 0; i < size(); ++i)
      if (((k[i] - matrix_[i][i]) % 2 + 2) % 2 != 0) return false;
    return true;
  }

  /// K^2 = K^T M^{-1} K.
  Rational square(const CharVector& k) const { return linalg::quadratic(inverse_, k.values); }

  /// K + 2 v*, with v*(u) = v.u.
  CharVector shift(const CharVector& k, std::size_t v, std::int64_t times = 1) const {
    CharVector out = k;
    for (std::size_t u = 0; u < size(); ++u) out.values[u] += 2 * times * matrix_[v][u];
    return out;
  }

  /// Class invariant: M^{-1} K reduced mod 2 coordinatewise. Two
  /// characteristic vectors share a class iff their keys agree.
  RatVector class_key(const CharVector& k) const {
    RatVector y = linalg::multiply(inverse_, linalg::to_rational(k.values));
    for (auto& r : y) r = r - Rational(2) * Rational((r / Rational(2)).floor());
    return y;
  }

  /// Calls `visit(K)` for every K = base + 2Mx with -(K + w)^2 <= bound.
  /// Fincke-Pohst enumeration in y = M^{-1}(K + w); the floating point bounds
  /// are padded and every point is confirmed exactly.
  void enumerate(const CharVector& base, const IntVector& w, const Rational& bound,
                 const std::function<void(const CharVector&)>& visit) const {
    const std::size_t n = size();
    if (bound < Rational(0)) return;
    IntVector bw(n);
    for (std::size_t i = 0; i < n; ++i) bw[i] = base[i] + w[i];
    RatVector c = linalg::multiply(inverse_, linalg::to_rational(bw));
    std::vector<double> cd(n);
    for (std::size_t i = 0; i < n; ++i) cd[i] = c[i].to_double();
    std::vector<double> y(n, 0.0);
    IntVector x(n, 0);
    const double budget0 = bound.to_double() + 1e-7 * (1.0 + std::abs(bound.to_double()));
    std::function<void(std::ptrdiff_t, double)> rec = [&](std::ptrdiff_t i, double budget) {
      if (i < 0) {
        CharVector k = base;
        for (std::size_t a = 0; a < n; ++a)
          for (std::size_t b = 0; b < n; ++b) k.values[a] += 2 * matrix_[a][b] * x[b];
        CharVector kw = k;
        for (std::size_t a = 0; a < n; ++a) kw.values[a] += w[a];
        if (-square(kw) <= bound) visit(k);
        return;
      }
      const auto ui = static_cast<std::size_t>(i);
      double center = 0.0;
      for (std::size_t j = ui + 1; j < n; ++j) center -= upper_[ui][j] * y[j];
      const double r = std::sqrt(std::max(0.0, budget / diag_[ui]));
      const auto lo = static_cast<std::int64_t>(std::ceil((center - r - cd[ui]) / 2.0 - 1e-9));
      const auto hi = static_cast<std::int64_t>(std::floor((center + r - cd[ui]) / 2.0 + 1e-9));
      for (std::int64_t xi = lo; xi <= hi; ++xi) {
        x[ui] = xi;
        y[ui] = cd[ui] + 2.0 * static_cast<double>(xi);
        const double t = y[ui] - center;
        const double rest = budget - diag_[ui] * t * t;
        if (rest < -1e-7 * (1.0 + budget0)) continue;
        rec(i - 1, std::max(rest, 0.0) + 1e-9);
      }
    };
    rec(static_cast<std::ptrdiff_t>(n) - 1, budget0);
  }

private:
  // P = -M = U^T D U with U unit upper triangular.
  void factor() {
    const std::size_t n = size();
    std::vector<std::vector<double>> q(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) q[i][j] = -static_cast<double>(matrix_[i][j]);
    diag_.assign(n, 0.0);
    upper_.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      diag_[i] = q[i][i];
      for (std::size_t j = i + 1; j < n; ++j) upper_[i][j] = q[i][j] / diag_[i];
      for (std::size_t k = i + 1; k < n; ++k)
        for (std::size_t l = i + 1; l < n; ++l) q[k][l] -= q[k][i] * q[i][l] / diag_[i];
    }
  }

  PlumbingGraph graph_;
  IntMatrix matrix_;
  RatMatrix inverse_;
  std::int64_t determinant_ = 0;
  std::vector<double> diag_;
  std::vector<std::vector<double>> upper_;
};

inline Rational char_square(const PlumbingGraph& g, const CharVector& k) {
  QuadraticForm q(g);
  if (!q.is_characteristic(k)) throw InputError("char_square: vector is not characteristic");
  return q.square(k);
}

/// A spin^c structure: coset of characteristic vectors modulo 2 M Z^V.
struct SpincClass {
  CharVector representative;  // maximal K^2, then lexicographically smallest
  std::size_t index = 0;      // position in spinc_classes order
  RatVector key;

  friend bool operator==(const SpincClass& a, const SpincClass& b) { return a.key == b.key; }
};

/// Best representative of the class of k: maximal K^2 (closest to zero),
/// ties broken by the lexicographically smallest value tuple. The class is
/// searched in ellipsoids -K^2 <= B with B doubling until one is nonempty.
inline CharVector extremal_representative(const QuadraticForm& q, const CharVector& k) {
  const IntVector zero(q.size(), 0);
  for (Rational bound(1);; bound = bound * Rational(2)) {
    std::optional<CharVector> out;
    Rational best;
    q.enumerate(k, zero, bound, [&](const CharVector& c) {
      Rational s = q.square(c);
      if (!out || s > best || (s == best && c < *out)) {
        best = s;
        out = c;
      }
    });
    if (out) return *out;
  }
}

inline SpincClass make_class(const QuadraticForm& q, const CharVector& k) {
  if (!q.is_characteristic(k)) throw InputError("vector is not characteristic");
  SpincClass s;
  s.representative = extremal_representative(q, k);
  s.key = q.class_key(k);
  return s;
}

/// All |det M| classes, ordered by decreasing K^2 of the representative and
/// then lexicographically.
inline std::vector<SpincClass> spinc_classes(const QuadraticForm& q) {
  CharVector base{q.graph().framings()};
  std::map<RatVector, CharVector> found;
  std::vector<CharVector> frontier{base};
  found.emplace(q.class_key(base), base);
  while (!frontier.empty()) {
    std::vector<CharVector> next;
    for (const auto& k : frontier)
      for (std::size_t v = 0; v < q.size(); ++v) {
        CharVector c = k;
        c.values[v] += 2;
        auto key = q.class_key(c);
        if (found.emplace(key, c).second) next.push_back(c);
      }
    frontier = std::move(next);
  }
  const auto det = q.determinant() < 0 ? -q.determinant() : q.determinant();
  check_consistent(found.size() == static_cast<std::size_t>(det),
                   "spin^c enumeration found " + std::to_string(found.size()) + " classes, |det| = " +
                       std::to_string(det));
  std::vector<SpincClass> out;
  for (const auto& [key, k] : found) out.push_back(make_class(q, k));
  std::sort(out.begin(), out.end(), [&](const SpincClass& a, const SpincClass& b) {
    Rational sa = q.square(a.representative), sb = q.square(b.representative);
    if (sa != sb) return sa > sb;
    return a.representative < b.representative;
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].index = i;
  return out;
}

inline std::vector<SpincClass> spinc_classes(const PlumbingGraph& g) { return spinc_classes(QuadraticForm(g)); }

/// Index of the class containing k within `classes`.
inline std::size_t class_index(const QuadraticForm& q, const std::vector<SpincClass>& classes,
                               const CharVector& k) {
  auto key = q.class_key(k);
  for (const auto& c : classes)
    if (c.key == key) return c.index;
  throw ConsistencyError("characteristic vector matches no enumerated class");
}

/// s twisted by n[v0]: the class of K + 2n * (adjacency of v0), returned as
/// the matching entry of `classes`.
inline SpincClass twist(const QuadraticForm& q, const std::vector<SpincClass>& classes, const SpincClass& s,
                        const MarkedGraph& mg, std::int64_t n) {
  CharVector k = s.representative;
  for (auto a : mg.attachments) k.values[a] += 2 * n;
  return classes.at(class_index(q, classes, k));
}

}  // namespace plumbo

#endif  // PLUMBO_SPINC_HPP
