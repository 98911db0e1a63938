#ifndef PLUMBO_BIFILTERED_HPP
#define PLUMBO_BIFILTERED_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "plumbo/complex.hpp"
#include "plumbo/errors.hpp"
#include "plumbo/rational.hpp"

namespace plumbo {

enum class SubKind { A, B, C };

namespace detail {

/// Power of U carried by generator x inside the subcomplex of the given kind.
inline std::int64_t sub_power(const BifilteredComplex& c, std::size_t x, SubKind kind, const Rational& i) {
  if (kind == SubKind::B) return 0;
  const Rational d = c.generator(x).alexander - i;
  if (!d.is_integer()) throw InputError("level " + i.str() + " is in the wrong residue class");
  const auto m = d.to_integer();
  return kind == SubKind::A ? std::max<std::int64_t>(0, m) : m;
}

}  // namespace detail

/// A_i = span of U^{max(0, A-i)} x, B = the complex, C_i = span of U^{A-i} x,
/// each rewritten as a free complex on the same generator set.
inline GradedFreeComplex sub_complex(const BifilteredComplex& c, SubKind kind, const Rational& i = Rational(0)) {
  GradedFreeComplex out;
  std::vector<std::int64_t> m(c.size());
  for (std::size_t x = 0; x < c.size(); ++x) {
    m[x] = detail::sub_power(c, x, kind, i);
    Generator g = c.generator(x);
    g.maslov = g.maslov - Rational(2 * m[x]);
    out.add_generator(g);
  }
  for (std::size_t x = 0; x < c.size(); ++x)
    for (const auto& en : c.boundary(x)) {
      const auto e = en.exponent + m[x] - m[en.target];
      if (e < 0) throw ConsistencyError("sub_complex: filtration violated at " + c.generator(x).label);
      out.toggle(x, en.target, e);
    }
  return out;
}

/// The canonical map between two subcomplexes on the same generators,
/// x -> U^{m_src(x) + extra - m_dst(x)} x, lowering gradings by 2*extra.
inline ChainMap sub_map(const BifilteredComplex& c, SubKind src, const Rational& i, SubKind dst, const Rational& j,
                        std::int64_t extra = 0) {
  ChainMap f;
  f.shift = extra;
  for (std::size_t x = 0; x < c.size(); ++x) {
    const auto e = detail::sub_power(c, x, src, i) + extra - detail::sub_power(c, x, dst, j);
    if (e < 0) throw ConsistencyError("sub_map: source is not contained in the target");
    f.images.push_back({Entry{x, e}});
  }
  return f;
}

/// psi_i: A_i -> A_{i+1}, phi_{i+1}: A_{i+1} -> A_i (multiplication by U),
/// v_i: A_i -> B, h_i: A_i -> C_i.
inline ChainMap map_psi(const BifilteredComplex& c, const Rational& i) {
  return sub_map(c, SubKind::A, i, SubKind::A, i + Rational(1));
}
inline ChainMap map_phi(const BifilteredComplex& c, const Rational& i) {
  return sub_map(c, SubKind::A, i + Rational(1), SubKind::A, i, 1);
}
inline ChainMap map_v(const BifilteredComplex& c, const Rational& i) {
  return sub_map(c, SubKind::A, i, SubKind::B, Rational(0));
}
inline ChainMap map_h(const BifilteredComplex& c, const Rational& i) {
  return sub_map(c, SubKind::A, i, SubKind::C, i);
}

/// Generators pairs, d(x@y) = dx@y + x@dy; gradings and A add.
inline BifilteredComplex tensor(const BifilteredComplex& a, const BifilteredComplex& b) {
  BifilteredComplex out;
  const std::size_t nb = b.size();
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < nb; ++y) {
      const auto& gx = a.generator(x);
      const auto& gy = b.generator(y);
      out.add_generator(Generator{gx.label + "*" + gy.label, gx.maslov + gy.maslov, gx.degree + gy.degree,
                                  gx.alexander + gy.alexander});
    }
  for (std::size_t x = 0; x < a.size(); ++x)
    for (std::size_t y = 0; y < nb; ++y) {
      for (const auto& en : a.boundary(x)) out.toggle(x * nb + y, en.target * nb + y, en.exponent);
      for (const auto& en : b.boundary(y)) out.toggle(x * nb + y, x * nb + en.target, en.exponent);
    }
  return out;
}

/// Whether the associated (j, A)-graded differential vanishes.
inline bool is_minimal(const BifilteredComplex& c) {
  for (std::size_t x = 0; x < c.size(); ++x)
    for (const auto& en : c.boundary(x))
      if (en.exponent == 0 && c.generator(en.target).alexander == c.generator(x).alexander) return false;
  return true;
}

/// Filtered Gaussian elimination: cancel U^0 entries between generators of
/// equal A, correcting the remaining entries by the zig-zag rule.
inline BifilteredComplex minimal_model(const BifilteredComplex& c) {
  const std::size_t n = c.size();
  std::vector<std::map<std::size_t, std::int64_t>> col(n);
  std::vector<std::set<std::size_t>> row(n);
  for (std::size_t x = 0; x < n; ++x)
    for (const auto& en : c.boundary(x)) {
      col[x][en.target] = en.exponent;
      row[en.target].insert(x);
    }
  std::vector<char> alive(n, 1);
  auto toggle = [&](std::size_t z, std::size_t w, std::int64_t e) {
    auto [it, fresh] = col[z].emplace(w, e);
    if (fresh) {
      row[w].insert(z);
    } else {
      check_consistent(it->second == e, "minimal_model: inhomogeneous correction");
      col[z].erase(it);
      row[w].erase(z);
    }
  };
  for (std::size_t x = 0; x < n; ++x) {
    if (!alive[x]) continue;
    std::size_t y = n;
    for (const auto& [t, e] : col[x])
      if (e == 0 && c.generator(t).alexander == c.generator(x).alexander) {
        y = t;
        break;
      }
    if (y == n) continue;
    // z -> y with U^s becomes z -> (dx - y) with U^s.
    const auto dx = col[x];
    const std::vector<std::size_t> sources(row[y].begin(), row[y].end());
    for (auto z : sources) {
      if (z == x) continue;
      const auto s = col[z].at(y);
      for (const auto& [w, e] : dx)
        if (w != y) toggle(z, w, s + e);
    }
    for (auto k : {x, y}) {
      for (const auto& [w, e] : col[k]) row[w].erase(k);
      col[k].clear();
      for (auto z : row[k]) col[z].erase(k);
      row[k].clear();
      alive[k] = 0;
    }
  }
  BifilteredComplex out;
  std::vector<std::size_t> idx(n, n);
  for (std::size_t x = 0; x < n; ++x)
    if (alive[x]) idx[x] = out.add_generator(c.generator(x));
  for (std::size_t x = 0; x < n; ++x)
    if (alive[x])
      for (const auto& [w, e] : col[x]) out.toggle(idx[x], idx[w], e);
  // A correction can create a new cancellable entry at an earlier generator.
  if (!is_minimal(out)) return minimal_model(out);
  return out;
}

}  // namespace plumbo

#endif  // PLUMBO_BIFILTERED_HPP
