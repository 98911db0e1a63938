#ifndef PLUMBO_LATTICE_HPP
#define PLUMBO_LATTICE_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <unordered_map>
#include <vector>

#include "plumbo/complex.hpp"
#include "plumbo/errors.hpp"
#include "plumbo/graph.hpp"
#include "plumbo/rational.hpp"
#include "plumbo/spinc.hpp"

namespace plumbo {

/// The cube [K, E]: corners K + 2 sum_{u in I} u*, I subset of E.
struct CubeGenerator {
  CharVector k;
  std::vector<std::size_t> e;  // sorted vertex indices
  friend auto operator<=>(const CubeGenerator&, const CubeGenerator&) = default;
};

namespace detail {

/// h(I) = K(I) + I^2 for the subset of e selected by mask. Always even.
inline std::int64_t corner_h(const IntMatrix& m, const CharVector& k, const std::vector<std::size_t>& e,
                             std::uint64_t mask) {
  std::int64_t h = 0;
  for (std::size_t a = 0; a < e.size(); ++a) {
    if (!((mask >> a) & 1U)) continue;
    h += k[e[a]];
    for (std::size_t b = 0; b < e.size(); ++b)
      if ((mask >> b) & 1U) h += m[e[a]][e[b]];
  }
  return h;
}

inline std::int64_t min_corner_h(const IntMatrix& m, const CharVector& k, const std::vector<std::size_t>& e) {
  std::int64_t best = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << e.size()); ++mask)
    best = std::min(best, corner_h(m, k, e, mask));
  return best;
}

inline void require_cube(const QuadraticForm& q, const CharVector& k, const std::vector<std::size_t>& e) {
  if (!q.is_characteristic(k)) throw InputError("cube: vector is not characteristic");
  for (std::size_t a = 0; a < e.size(); ++a)
    if (e[a] >= q.size() || (a > 0 && e[a] <= e[a - 1])) throw InputError("cube: bad vertex set");
  if (e.size() > 62) throw InputError("cube: too many vertices");
}

inline std::string cube_label(const QuadraticForm& q, const CharVector& k, const std::vector<std::size_t>& e) {
  std::string s = "[(";
  for (std::size_t i = 0; i < k.size(); ++i) s += (i ? "," : "") + std::to_string(k[i]);
  s += "),{";
  for (std::size_t i = 0; i < e.size(); ++i) s += (i ? "," : "") + q.graph().id(e[i]);
  return s + "}]";
}

}  // namespace detail

/// g[K,E] = min over I subset of E of (K(I) + I^2)/2.
inline std::int64_t g_weight(const QuadraticForm& q, const CharVector& k, const std::vector<std::size_t>& e) {
  detail::require_cube(q, k, e);
  return detail::min_corner_h(q.matrix(), k, e) / 2;
}

/// gr[K,E] = 2 g[K,E] + |E| + (K^2 + |V|)/4.
inline Rational maslov_grading(const QuadraticForm& q, const CharVector& k, const std::vector<std::size_t>& e) {
  return Rational(2 * g_weight(q, k, e) + static_cast<std::int64_t>(e.size())) +
         (q.square(k) + Rational(static_cast<std::int64_t>(q.size()))) / Rational(4);
}

struct BoundaryTerm {
  std::int64_t exponent = 0;
  CubeGenerator face;
};

/// d[K,E] = sum_v U^{a_v}[K, E-v] + U^{b_v}[K+2v*, E-v], exponents forced by
/// the grading dropping by exactly one.
inline std::vector<BoundaryTerm> boundary(const QuadraticForm& q, const CharVector& k,
                                          const std::vector<std::size_t>& e) {
  const Rational gr = maslov_grading(q, k, e);
  std::vector<BoundaryTerm> out;
  for (std::size_t a = 0; a < e.size(); ++a) {
    std::vector<std::size_t> rest = e;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(a));
    for (const auto& base : {k, q.shift(k, e[a])}) {
      const Rational t = (maslov_grading(q, base, rest) - gr + Rational(1)) / Rational(2);
      check_consistent(t.is_integer() && t >= Rational(0), "boundary: bad exponent " + t.str());
      out.push_back(BoundaryTerm{t.to_integer(), CubeGenerator{base, rest}});
    }
  }
  return out;
}

/// Which cubes to keep. Box mode: corners K_rep + 2Mx with x in [-N, N]^V.
/// Sublevel mode: corners with (|E| - gr)/2 <= level; with `dual` set,
/// additionally corners with level + A0 <= dual_level are kept, where
/// A0 is measured with respect to the vector `dual` (2n for a knot).
struct TruncationBox {
  std::optional<std::int64_t> radius;
  std::optional<Rational> level;
  std::optional<IntVector> dual;
  Rational dual_level;

  static TruncationBox box(std::int64_t n) { return TruncationBox{n, std::nullopt, std::nullopt, Rational(0)}; }
  static TruncationBox sublevel(const Rational& l) { return TruncationBox{std::nullopt, l, std::nullopt, Rational(0)}; }
};

/// A built lattice complex with the cube behind each generator.
struct LatticeComplex {
  GradedFreeComplex complex;
  std::vector<CubeGenerator> cubes;
  std::vector<CharVector> points;  // zero-cubes, sorted
};

using AlexanderFunction = std::function<Rational(const CharVector&, const std::vector<std::size_t>&)>;

/// Zero-cubes of class `rep` selected by the truncation.
inline std::vector<CharVector> truncation_points(const QuadraticForm& q, const CharVector& rep,
                                                 const TruncationBox& box) {
  std::vector<CharVector> pts;
  const std::size_t n = q.size();
  if (box.radius) {
    const std::int64_t r = *box.radius;
    if (r < 0) throw InputError("truncation radius must be nonnegative");
    IntVector x(n, -r);
    for (;;) {
      CharVector k = rep;
      for (std::size_t v = 0; v < n; ++v) k = q.shift(k, v, x[v]);
      pts.push_back(k);
      std::size_t v = 0;
      while (v < n && x[v] == r) x[v++] = -r;
      if (v == n) break;
      ++x[v];
    }
  } else {
    if (!box.level) throw InputError("truncation needs a radius or a level");
    const Rational nv(static_cast<std::int64_t>(n));
    auto collect = [&](const IntVector& w, const Rational& lvl) {
      q.enumerate(rep, w, Rational(8) * lvl + nv, [&](const CharVector& k) { pts.push_back(k); });
    };
    collect(IntVector(n, 0), *box.level);
    if (box.dual) collect(*box.dual, box.dual_level);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

namespace detail {

struct CharVectorHash {
  std::size_t operator()(const CharVector& k) const {
    std::size_t h = 0x9e3779b97f4a7c15ULL;
    for (auto x : k.values) h = (h ^ static_cast<std::size_t>(x)) * 0x100000001b3ULL;
    return h;
  }
};

}  // namespace detail

/// All cubes whose corners lie in `points`, with the lattice differential.
/// Generators are ordered by dimension, then by point, then by vertex set.
/// `labels` = false leaves generator labels empty (bulk checks).
inline LatticeComplex build_from_points(const QuadraticForm& q, std::vector<CharVector> points,
                                        const AlexanderFunction& alexander = {}, bool labels = true) {
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  const std::size_t n = q.size();
  if (n > 62) throw InputError("graph too large");
  const std::size_t np = points.size();
  constexpr std::size_t none = static_cast<std::size_t>(-1);

  // step[p * n + v]: index of K_p + 2 v*, or none.
  std::vector<std::size_t> step(np * n, none);
  {
    std::unordered_map<CharVector, std::size_t, detail::CharVectorHash> where;
    where.reserve(np * 2);
    for (std::size_t i = 0; i < np; ++i) where.emplace(points[i], i);
    CharVector buf;
    for (std::size_t p = 0; p < np; ++p)
      for (std::size_t v = 0; v < n; ++v) {
        buf = points[p];
        for (std::size_t u = 0; u < n; ++u) buf.values[u] += 2 * q.matrix()[v][u];
        auto it = where.find(buf);
        if (it != where.end()) step[p * n + v] = it->second;
      }
  }

  // Cubes: the corner K_p + 2 I* for I subset of E must exist for all I;
  // grow E upwards keeping the far corner of every sub-face.
  struct Cube {
    std::size_t point;
    std::uint64_t mask;
  };
  std::vector<std::vector<Cube>> by_dim(n + 1);
  std::vector<std::pair<std::uint64_t, std::size_t>> corners;  // (mask, point)
  for (std::size_t p = 0; p < np; ++p) {
    // corners of the cube grown so far, indexed by submask order of growth
    std::vector<std::size_t> far{p};  // far[j] = corner for submask j of the vertex list
    std::vector<std::size_t> verts;
    std::function<void(std::uint64_t, std::size_t)> grow = [&](std::uint64_t mask, std::size_t from) {
      by_dim[verts.size()].push_back(Cube{p, mask});
      for (std::size_t v = from; v < n; ++v) {
        const std::size_t old = far.size();
        bool ok = true;
        for (std::size_t j = 0; j < old; ++j) {
          const std::size_t c = step[far[j] * n + v];
          if (c == none) {
            ok = false;
            break;
          }
          far.push_back(c);
        }
        if (ok) {
          verts.push_back(v);
          grow(mask | (std::uint64_t{1} << v), v + 1);
          verts.pop_back();
        }
        far.resize(old);
      }
    };
    grow(0, 0);
  }

  LatticeComplex out;
  out.points = points;
  const auto& m = q.matrix();
  const Rational nv(static_cast<std::int64_t>(n));
  std::vector<Rational> base_grading(np);
  for (std::size_t p = 0; p < np; ++p) base_grading[p] = (q.square(points[p]) + nv) / Rational(4);
  // Within one class the base gradings differ by integers; exponents are
  // computed from these integer offsets plus min h + |E|.
  std::vector<std::int64_t> offset(np);
  for (std::size_t p = 0; p < np; ++p) offset[p] = (base_grading[p] - base_grading[0]).to_integer();
  std::vector<std::int64_t> rel;  // maslov - base_grading[0] per generator

  // gen_of[p]: (mask, generator) sorted by mask.
  std::vector<std::vector<std::pair<std::uint64_t, std::size_t>>> gen_of(np);
  std::vector<std::size_t> e;
  for (std::size_t d = 0; d <= n; ++d)
    for (const auto& cb : by_dim[d]) {
      e.clear();
      for (std::size_t v = 0; v < n; ++v)
        if ((cb.mask >> v) & 1U) e.push_back(v);
      const auto& k = points[cb.point];
      Generator g;
      if (labels) g.label = detail::cube_label(q, k, e);
      g.degree = static_cast<std::int64_t>(d);
      rel.push_back(offset[cb.point] + detail::min_corner_h(m, k, e) + g.degree);
      g.maslov = base_grading[0] + Rational(rel.back());
      if (alexander) g.alexander = alexander(k, e);
      const auto id = out.complex.add_generator(std::move(g));
      gen_of[cb.point].emplace_back(cb.mask, id);
      out.cubes.push_back(CubeGenerator{k, e});
    }
  for (auto& row : gen_of) std::sort(row.begin(), row.end());
  auto find_gen = [&](std::size_t p, std::uint64_t mask) {
    const auto& row = gen_of[p];
    auto it = std::lower_bound(row.begin(), row.end(), std::make_pair(mask, std::size_t{0}));
    if (it == row.end() || it->first != mask) throw ConsistencyError("face of a cube is missing");
    return it->second;
  };

  std::size_t x = 0;
  for (std::size_t d = 0; d <= n; ++d)
    for (const auto& cb : by_dim[d]) {
      for (std::size_t v = 0; v < n; ++v) {
        if (!((cb.mask >> v) & 1U)) continue;
        const std::uint64_t rest = cb.mask & ~(std::uint64_t{1} << v);
        for (std::size_t face_point : {cb.point, step[cb.point * n + v]}) {
          const std::size_t y = find_gen(face_point, rest);
          const std::int64_t t2 = rel[y] - rel[x] + 1;
          if (t2 < 0 || t2 % 2 != 0)
            throw ConsistencyError("boundary exponent " + Rational(t2, 2).str() + " at " +
                                   detail::cube_label(q, points[cb.point], out.cubes[x].e));
          out.complex.toggle(x, y, t2 / 2);
        }
      }
      ++x;
    }
  return out;
}

/// The class-s complex on a truncation; d^2 = 0 and the grading law are
/// asserted.
inline LatticeComplex build_complex(const QuadraticForm& q, const SpincClass& s, const TruncationBox& box,
                                    const AlexanderFunction& alexander = {}, bool labels = true) {
  auto lc = build_from_points(q, truncation_points(q, s.representative, box), alexander, labels);
  lc.complex.validate();
  return lc;
}

struct LatticeOptions {
  int nmax = 6;
};

struct LatticeHomology {
  GradedModule module;
  std::map<std::int64_t, GradedModule> by_delta;
  int stage = 0;               // N at which the result stabilised
  Rational level;              // sublevel used
  std::size_t generators = 0;  // size of the complex at stage N+1
  std::vector<CharVector> points;
};

/// Level of the top zero-cube of the class: -(K_rep^2 + |V|)/8.
inline Rational top_level(const QuadraticForm& q, const SpincClass& s) {
  return -(q.square(s.representative) + Rational(static_cast<std::int64_t>(q.size()))) / Rational(8);
}

/// Lattice homology of the class s. Stage N uses the sublevel at
/// top + N; the answer at N is accepted when both N and N+1 have exactly
/// one free summand and no class born by stage N dies between N and N+1.
inline LatticeHomology lattice_homology(const QuadraticForm& q, const SpincClass& s,
                                        const LatticeOptions& opt = {}) {
  const Rational top = top_level(q, s);
  std::string last;
  for (int stage = 2; stage < opt.nmax; ++stage) {
    const Rational lo = top + Rational(stage), hi = lo + Rational(1);
    auto lc = build_complex(q, s, TruncationBox::sublevel(hi));
    Reduction red(lc.complex);
    const auto m_lo = red.module(lo), m_hi = red.module(hi);
    bool crossing = false;
    for (const auto& pr : red.pairs())
      if (red.level(pr.birth) <= lo && red.level(pr.death) > lo) crossing = true;
    last = m_lo.str();
    if (m_lo.free.size() == 1 && m_hi.free.size() == 1 && !crossing) {
      LatticeHomology out;
      out.module = m_lo;
      out.by_delta = red.module_by_degree(lo);
      out.stage = stage;
      out.level = lo;
      out.generators = lc.complex.size();
      out.points = lc.points;
      return out;
    }
  }
  throw ConsistencyError("lattice homology did not stabilise by N = " + std::to_string(opt.nmax) +
                         "; last stage gave " + last);
}

inline LatticeHomology lattice_homology(const PlumbingGraph& g, std::size_t class_index,
                                        const LatticeOptions& opt = {}) {
  QuadraticForm q(g);
  return lattice_homology(q, spinc_classes(q).at(class_index), opt);
}

/// Homology split by the cube dimension |E|.
inline std::map<std::int64_t, GradedModule> delta_split(const QuadraticForm& q, const SpincClass& s,
                                                        const LatticeOptions& opt = {}) {
  return lattice_homology(q, s, opt).by_delta;
}

struct DInvariant {
  Rational d;
  std::optional<CharVector> representative;  // zero-cube K with (K^2+|V|)/4 = d
};

inline DInvariant d_invariant(const QuadraticForm& q, const SpincClass& s, const LatticeOptions& opt = {}) {
  const auto lh = lattice_homology(q, s, opt);
  DInvariant out;
  out.d = lh.module.free.at(0);
  const Rational nv(static_cast<std::int64_t>(q.size()));
  for (const auto& k : lh.points)
    if ((q.square(k) + nv) / Rational(4) == out.d) {
      out.representative = k;
      break;
    }
  return out;
}

/// max (K^2 + |V|)/4 over the class; equals d for rational graphs.
inline Rational extremal_grading(const QuadraticForm& q, const SpincClass& s) {
  return (q.square(s.representative) + Rational(static_cast<std::int64_t>(q.size()))) / Rational(4);
}

inline bool is_lspace(const PlumbingGraph& g, const LatticeOptions& opt = {}) {
  QuadraticForm q(g);
  for (const auto& s : spinc_classes(q))
    if (!lattice_homology(q, s, opt).module.torsion.empty()) return false;
  return true;
}

}  // namespace plumbo

#endif  // PLUMBO_LATTICE_HPP
