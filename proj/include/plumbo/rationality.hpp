#ifndef PLUMBO_RATIONALITY_HPP
#define PLUMBO_RATIONALITY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plumbo/errors.hpp"
#include "plumbo/graph.hpp"
#include "plumbo/linalg.hpp"

namespace plumbo {

/// Nonnegative cycle Z = sum n_i E_i.
struct Cycle {
  IntVector coefficients;
  friend bool operator==(const Cycle&, const Cycle&) = default;
};

namespace detail {

inline std::int64_t pairing(const IntMatrix& m, const IntVector& z, std::size_t i) {
  std::int64_t s = 0;
  for (std::size_t j = 0; j < z.size(); ++j) s += z[j] * m[j][i];
  return s;
}

inline std::int64_t iteration_cap(const PlumbingGraph& g) {
  return 16 * static_cast<std::int64_t>(g.size()) * g.max_abs_framing();
}

inline void require_connected(const PlumbingGraph& g, const std::string& what) {
  if (g.empty() || g.components().size() != 1) throw InputError(what + ": graph must be connected");
}

}  // namespace detail

/// Artin's fundamental cycle by the increment iteration starting at (1,...,1).
inline Cycle artin_cycle(const PlumbingGraph& g) {
  detail::require_connected(g, "artin_cycle");
  require_negative_definite(g, "artin_cycle");
  const IntMatrix m = g.intersection_matrix();
  IntVector z(g.size(), 1);
  const auto cap = detail::iteration_cap(g);
  for (std::int64_t step = 0;; ++step) {
    if (step > cap) throw ConsistencyError("artin_cycle: iteration cap exceeded");
    std::optional<std::size_t> bump;
    for (std::size_t i = 0; i < z.size() && !bump; ++i)
      if (detail::pairing(m, z, i) > 0) bump = i;
    if (!bump) break;
    z[*bump] += 1;
  }
  for (std::size_t i = 0; i < z.size(); ++i)
    check_consistent(detail::pairing(m, z, i) <= 0, "artin_cycle: Z.E_i > 0 at exit");
  return Cycle{z};
}

enum class RationalityMethod { laufer, genus, both };

struct RationalityResult {
  bool rational = false;
  std::vector<IntVector> trace;  // Laufer Z-sequence (first component's run first)
  std::optional<Cycle> artin;    // set by the genus method (connected input)
};

namespace detail {

/// Laufer's test on a connected graph.
inline bool laufer_connected(const PlumbingGraph& g, std::vector<IntVector>& trace) {
  const IntMatrix m = g.intersection_matrix();
  IntVector z(g.size(), 1);
  const auto cap = iteration_cap(g);
  for (std::int64_t step = 0; step <= cap; ++step) {
    trace.push_back(z);
    std::optional<std::size_t> one;
    bool all_nonpositive = true;
    for (std::size_t i = 0; i < z.size(); ++i) {
      const auto p = pairing(m, z, i);
      if (p >= 2) return false;
      if (p > 0) {
        all_nonpositive = false;
        if (!one) one = i;
      }
    }
    if (all_nonpositive) return true;
    z[*one] += 1;
  }
  throw ConsistencyError("laufer: iteration cap exceeded");
}

/// p(Z) = 0 test for the Artin cycle of a connected graph.
inline bool genus_zero(const PlumbingGraph& g, Cycle& artin) {
  artin = artin_cycle(g);
  const IntMatrix m = g.intersection_matrix();
  const auto& n = artin.coefficients;
  std::int64_t z2 = 0, sum_n = 0, sum_nm = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    z2 += n[i] * pairing(m, n, i);
    sum_n += n[i];
    sum_nm += n[i] * g.framing(i);
  }
  return z2 == 2 * sum_n + sum_nm - 2;
}

}  // namespace detail

/// Rationality of a negative definite forest (conjunction over components).
inline RationalityResult is_rational(const PlumbingGraph& g, RationalityMethod method = RationalityMethod::both) {
  require_negative_definite(g, "is_rational");
  RationalityResult res;
  res.rational = true;
  for (const auto& comp : g.components()) {
    PlumbingGraph c = g.induced(comp);
    std::optional<bool> by_laufer, by_genus;
    if (method != RationalityMethod::genus) by_laufer = detail::laufer_connected(c, res.trace);
    if (method != RationalityMethod::laufer) {
      Cycle z;
      by_genus = detail::genus_zero(c, z);
      if (g.components().size() == 1) res.artin = z;
    }
    if (by_laufer && by_genus)
      check_consistent(*by_laufer == *by_genus, "rationality methods disagree on component of " + c.id(0));
    res.rational = res.rational && (by_laufer ? *by_laufer : *by_genus);
  }
  return res;
}

struct AlmostRationalWitness {
  std::size_t vertex = 0;
  std::int64_t framing = 0;  // the decreased framing that certified rationality
};

/// The framing used for "sufficiently decreased": -2|V|(1 + max|m_i|).
inline std::int64_t almost_rational_bound(const PlumbingGraph& g) {
  return -2 * static_cast<std::int64_t>(g.size()) * (1 + g.max_abs_framing());
}

/// First vertex (in vertex order) whose framing, lowered to `low`, makes the
/// graph rational. Assumes rationality is monotone under lowering framings.
inline std::optional<AlmostRationalWitness> is_almost_rational(const PlumbingGraph& g,
                                                              std::optional<std::int64_t> low = {}) {
  detail::require_connected(g, "is_almost_rational");
  require_negative_definite(g, "is_almost_rational");
  const std::int64_t m_low = low.value_or(almost_rational_bound(g));
  for (std::size_t w = 0; w < g.size(); ++w) {
    PlumbingGraph h = g.with_vertex_framing(w, std::min(m_low, g.framing(w)));
    if (is_rational(h, RationalityMethod::laufer).rational) return AlmostRationalWitness{w, h.framing(w)};
  }
  return std::nullopt;
}

}  // namespace plumbo

#endif  // PLUMBO_RATIONALITY_HPP
