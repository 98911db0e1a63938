#ifndef PLUMBO_KNOT_HPP
#define PLUMBO_KNOT_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "plumbo/bifiltered.hpp"
#include "plumbo/complex.hpp"
#include "plumbo/errors.hpp"
#include "plumbo/graph.hpp"
#include "plumbo/lattice.hpp"
#include "plumbo/rationality.hpp"
#include "plumbo/spinc.hpp"

namespace plumbo {

/// Sigma = v0 + sum a_j v_j with Sigma.v_j = 0, i.e. a = -M^{-1} n.
struct SigmaClass {
  RatVector a;
  IntVector n;
  Rational an;  // a.n; Sigma^2 = m(v0) + a.n

  /// K(Sigma - v0) = sum a_j K(v_j).
  Rational pairing(const CharVector& k) const {
    Rational s;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * Rational(k[j]);
    return s;
  }
  Rational square(std::int64_t framing) const { return Rational(framing) + an; }
};

inline SigmaClass sigma_class(const MarkedGraph& mg, const QuadraticForm& q) {
  SigmaClass sc;
  sc.n = mg.adjacency();
  sc.a = linalg::multiply(q.inverse(), linalg::to_rational(sc.n));
  for (auto& x : sc.a) x = -x;
  for (std::size_t j = 0; j < sc.a.size(); ++j) sc.an += sc.a[j] * Rational(sc.n[j]);
  return sc;
}

inline SigmaClass sigma_class(const MarkedGraph& mg) { return sigma_class(mg, QuadraticForm(mg.graph)); }

/// Unnormalized Alexander grading. On zero-cubes A0(K) = (K(a) + a.n)/2;
/// on [K,H] it is the maximum over corners K_I of A0(K_I) - (h(I) - min h)/2,
/// where h(I) = K(I) + I^2.
inline Rational alexander_grading(const QuadraticForm& q, const SigmaClass& sc, const CharVector& k,
                                  const std::vector<std::size_t>& e) {
  const auto& m = q.matrix();
  std::int64_t min_h = 0, min_hn = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << e.size()); ++mask) {
    const auto h = detail::corner_h(m, k, e, mask);
    std::int64_t nI = 0;
    for (std::size_t b = 0; b < e.size(); ++b)
      if ((mask >> b) & 1U) nI += sc.n[e[b]];
    min_h = std::min(min_h, h);
    min_hn = std::min(min_hn, h + 2 * nI);
  }
  return (sc.pairing(k) + sc.an) / Rational(2) + Rational(min_h - min_hn) / Rational(2);
}

/// The v0-filtered lattice complex of class s on a truncation; generators
/// carry the unnormalized Alexander grading. Filtration compatibility is
/// asserted.
inline LatticeComplex build_bifiltered(const QuadraticForm& q, const SigmaClass& sc, const SpincClass& s,
                                       const TruncationBox& box) {
  auto lc = build_complex(q, s, box, [&](const CharVector& k, const std::vector<std::size_t>& e) {
    return alexander_grading(q, sc, k, e);
  });
  lc.complex.validate_filtration();
  return lc;
}

/// Smallest -(K + w)^2 over the class of k.
inline Rational min_shifted_norm(const QuadraticForm& q, const CharVector& k, const IntVector& w) {
  for (Rational bound(1);; bound = bound * Rational(2)) {
    std::optional<Rational> best;
    q.enumerate(k, w, bound, [&](const CharVector& c) {
      CharVector cw = c;
      for (std::size_t i = 0; i < w.size(); ++i) cw.values[i] += w[i];
      const Rational v = -q.square(cw);
      if (!best || v < *best) best = v;
    });
    if (best) return *best;
  }
}

struct StaircaseLevel {
  Rational i;  // unnormalized level
  std::int64_t a = 0, b = 0, d = 0;
  friend bool operator==(const StaircaseLevel&, const StaircaseLevel&) = default;
};

/// The sequences {a_i, b_i, d_i} of one class over a certified window.
/// Levels are stored unnormalized; `shift` converts to the symmetric
/// normalization (normalized level = i + shift).
struct StaircaseData {
  std::size_t spinc = 0;
  Rational shift;
  Rational i_s;  // fractional part of the normalized levels
  Rational q;    // grading of the generator of H(B)
  std::vector<StaircaseLevel> levels;  // window [i_bot, i_top], increasing
  std::vector<Rational> jumps;         // normalized, decreasing
  std::vector<std::string> warnings;

  const Rational& i_bot() const { return levels.front().i; }
  const Rational& i_top() const { return levels.back().i; }

  /// a_i with tail extrapolation (a = 0 above, slope -1 below the window).
  std::int64_t a(const Rational& i) const {
    if (i > i_top()) return 0;
    if (i < i_bot()) return levels.front().a + (i_bot() - i).to_integer();
    return at(i).a;
  }
  std::int64_t b(const Rational& i) const {
    if (i > i_top()) return levels.back().b + (i - i_top()).to_integer();
    if (i < i_bot()) return 0;
    return at(i).b;
  }
  std::int64_t d(const Rational& i) const {
    if (i >= i_top()) return 0;
    if (i < i_bot()) return 1;
    return at(i).d;
  }

  /// Same data with levels written in the normalized convention.
  std::vector<StaircaseLevel> normalized_levels() const {
    auto out = levels;
    for (auto& l : out) l.i = l.i + shift;
    return out;
  }

  friend bool operator==(const StaircaseData& x, const StaircaseData& y) {
    return x.q == y.q && x.jumps == y.jumps && x.normalized_levels() == y.normalized_levels();
  }

private:
  const StaircaseLevel& at(const Rational& i) const {
    const auto idx = (i - i_bot()).to_integer();
    return levels.at(static_cast<std::size_t>(idx));
  }
};

/// Raised when a truncated complex is too small to see a generator.
class TruncationTooSmall : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A bifiltered complex together with, for each subcomplex, the largest
/// sublevel on which it is exact (nullopt: the complex is the whole thing).
struct KnotComplexSource {
  BifilteredComplex complex;
  std::function<std::optional<Rational>(SubKind, const Rational&)> cap;
};

struct StaircaseOptions {
  int initial_half_width = 2;
  int max_half_width = 64;
  bool check_maps = true;  // recompute a, b, d from explicit chain maps
};

namespace detail {

struct SubView {
  GradedFreeComplex complex;
  std::vector<std::size_t> local;  // original index -> local index, or npos
};

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

inline SubView sub_view(const KnotComplexSource& src, SubKind kind, const Rational& i,
                        std::optional<Rational> cap) {
  SubView v;
  auto full = sub_complex(src.complex, kind, i);
  v.local.assign(full.size(), npos);
  if (!cap) {
    for (std::size_t x = 0; x < full.size(); ++x) v.local[x] = x;
    v.complex = std::move(full);
    return v;
  }
  for (std::size_t x = 0; x < full.size(); ++x)
    if (full.level(x) <= *cap) v.local[x] = v.complex.add_generator(full.generator(x));
  for (std::size_t x = 0; x < full.size(); ++x) {
    if (v.local[x] == npos) continue;
    for (const auto& en : full.boundary(x)) {
      check_consistent(v.local[en.target] != npos, "sublevel truncation is not a subcomplex");
      v.complex.toggle(v.local[x], v.local[en.target], en.exponent);
    }
  }
  return v;
}

inline ChainMap restrict_map(const ChainMap& f, const SubView& s, const SubView& t) {
  ChainMap out;
  out.shift = f.shift;
  out.images.resize(s.complex.size());
  for (std::size_t x = 0; x < s.local.size(); ++x) {
    if (s.local[x] == npos) continue;
    for (const auto& en : f.images[x]) {
      check_consistent(t.local[en.target] != npos, "chain map leaves the target truncation");
      out.images[s.local[x]].push_back(Entry{t.local[en.target], en.exponent});
    }
  }
  return out;
}

inline std::optional<Rational> min_cap(std::optional<Rational> a, std::optional<Rational> b) {
  if (!a) return b;
  if (!b) return a;
  return std::min(*a, *b);
}

/// Grading of the free generator of a subcomplex's homology at the given cap.
inline Rational generator_grading(const GradedModule& m, const std::string& what, std::vector<std::string>& warnings,
                                  bool strict) {
  if (m.free.empty()) throw TruncationTooSmall(what + ": no free summand in truncation");
  if (!m.is_free_rank_one()) {
    const std::string msg = what + ": homology is " + m.str() + ", not F[U]";
    if (strict) throw ConsistencyError(msg);
    warnings.push_back(msg);
  }
  return m.free.front();
}

}  // namespace detail

/// Computes {a_i, b_i, d_i} on a window widened until a = 0 at the top and
/// b = 0 at the bottom. `strict` turns non-F[U] homologies into errors.
inline StaircaseData staircase_from_source(const KnotComplexSource& src, bool strict,
                                           const StaircaseOptions& opt = {}) {
  if (src.complex.size() == 0) throw InputError("staircase: empty complex");
  const Rational r = src.complex.generator(0).alexander.frac();
  StaircaseData out;
  std::map<std::pair<int, Rational>, Rational> memo;
  auto grading = [&](SubKind kind, const Rational& i) {
    auto key = std::make_pair(static_cast<int>(kind), kind == SubKind::B ? Rational(0) : i);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    auto v = detail::sub_view(src, kind, i, src.cap(kind, i));
    static const char* names[] = {"A", "B", "C"};
    const auto g = detail::generator_grading(homology(v.complex), std::string(names[key.first]) + "_" + i.str(),
                                             out.warnings, strict);
    memo.emplace(key, g);
    return g;
  };
  out.q = grading(SubKind::B, r);

  // Center the initial window on the Alexander gradings present.
  Rational lo_a = src.complex.generator(0).alexander, hi_a = lo_a;
  for (const auto& g : src.complex.generators()) {
    lo_a = std::min(lo_a, g.alexander);
    hi_a = std::max(hi_a, g.alexander);
  }
  const Rational center = r + Rational(((lo_a + hi_a) / Rational(2)).floor() - r.floor());
  for (int w = opt.initial_half_width;; w += 2) {
    if (w > opt.max_half_width) throw ConsistencyError("staircase: window not certifiable");
    const Rational bot = center - Rational(w), top = center + Rational(w);
    const auto qb = out.q;
    const auto a_top = (qb - grading(SubKind::A, top)) / Rational(2);
    const auto b_bot = (grading(SubKind::C, bot) - grading(SubKind::A, bot)) / Rational(2);
    if (a_top != Rational(0) || b_bot != Rational(0)) continue;
    out.levels.clear();
    for (Rational i = bot; i <= top; i += Rational(1)) {
      StaircaseLevel l;
      l.i = i;
      const auto qa = grading(SubKind::A, i);
      l.a = ((qb - qa) / Rational(2)).to_integer();
      l.b = ((grading(SubKind::C, i) - qa) / Rational(2)).to_integer();
      l.d = i == top ? 0 : ((grading(SubKind::A, i + Rational(1)) - qa) / Rational(2)).to_integer();
      out.levels.push_back(l);
    }
    break;
  }

  if (opt.check_maps) {
    for (const auto& l : out.levels) {
      const auto& i = l.i;
      auto capA = src.cap(SubKind::A, i), capB = src.cap(SubKind::B, i), capC = src.cap(SubKind::C, i);
      auto capA1 = src.cap(SubKind::A, i + Rational(1));
      auto c_v = detail::min_cap(capA, capB);
      auto c_h = detail::min_cap(capA, capC);
      auto c_p = detail::min_cap(capA, capA1);
      auto check = [&](SubKind tk, const Rational& ti, std::optional<Rational> cap, const ChainMap& f,
                       std::int64_t expect, const char* what) {
        auto s = detail::sub_view(src, SubKind::A, i, cap);
        auto t = detail::sub_view(src, tk, ti, cap);
        if (!homology(s.complex).is_free_rank_one() || !homology(t.complex).is_free_rank_one()) return;
        const auto e = induced_power(s.complex, t.complex, detail::restrict_map(f, s, t));
        check_consistent(e == expect, std::string(what) + " at level " + i.str() + ": chain map gives " +
                                          std::to_string(e) + ", gradings give " + std::to_string(expect));
      };
      check(SubKind::B, i, c_v, map_v(src.complex, i), l.a, "v");
      check(SubKind::C, i, c_h, map_h(src.complex, i), l.b, "h");
      if (l.i != out.i_top()) check(SubKind::A, i + Rational(1), c_p, map_psi(src.complex, i), l.d, "psi");
    }
  }

  // Jumps gamma with d_gamma != d_{gamma-1}; below the window d = 1.
  std::vector<Rational> raw;
  std::int64_t prev = 1;
  for (const auto& l : out.levels) {
    if (l.d != prev) raw.push_back(l.i);
    prev = l.d;
  }
  Rational sum;
  for (const auto& g : raw) sum += g;
  out.shift = raw.empty() ? Rational(0) : -sum / Rational(static_cast<std::int64_t>(raw.size()));
  for (auto g : raw) out.jumps.push_back(g + out.shift);
  std::sort(out.jumps.begin(), out.jumps.end(), std::greater<>());
  out.i_s = (out.levels.front().i + out.shift).frac();
  return out;
}

/// Violations of the structure theorem's clauses (2)-(5) and of jump symmetry.
inline std::vector<std::string> staircase_violations(const StaircaseData& sd) {
  std::vector<std::string> bad;
  for (std::size_t k = 0; k < sd.levels.size(); ++k) {
    const auto& l = sd.levels[k];
    const auto where = " at i=" + (l.i + sd.shift).str();
    if (l.a < 0 || l.b < 0) bad.push_back("negative exponent" + where);
    if (l.d != 0 && l.d != 1) bad.push_back("d not in {0,1}" + where);
    const auto an = sd.a(l.i + Rational(1)), bn = sd.b(l.i + Rational(1));
    if (l.d == 0 && !(l.a == an && l.b == bn - 1)) bad.push_back("recursion for d=0 fails" + where);
    if (l.d == 1 && !(l.a == an + 1 && l.b == bn)) bad.push_back("recursion for d=1 fails" + where);
  }
  if (sd.levels.back().a != 0) bad.push_back("a does not vanish at the top");
  if (sd.levels.front().b != 0) bad.push_back("b does not vanish at the bottom");
  auto neg = sd.jumps;
  for (auto& g : neg) g = -g;
  std::sort(neg.begin(), neg.end(), std::greater<>());
  if (neg != sd.jumps) bad.push_back("jump multiset is not symmetric");
  return bad;
}

/// Whether every component of the graph is rational (structure theorem
/// hypothesis).
inline bool components_rational(const PlumbingGraph& g) { return is_rational(g, RationalityMethod::laufer).rational; }

/// Knot data of one marked graph: the quadratic form of G, its classes and
/// Sigma, with cached staircases.
class KnotContext {
public:
  explicit KnotContext(const MarkedGraph& mg, const LatticeOptions& lopt = {}, const StaircaseOptions& sopt = {})
      : mg_(mg), q_(mg.graph), classes_(spinc_classes(q_)), sigma_(sigma_class(mg, q_)), lopt_(lopt), sopt_(sopt),
        rational_(components_rational(mg.graph)), strict_(rational_ && mg.graph.components().size() == 1) {}

  const MarkedGraph& marked() const { return mg_; }
  const QuadraticForm& form() const { return q_; }
  const std::vector<SpincClass>& classes() const { return classes_; }
  const SigmaClass& sigma() const { return sigma_; }
  bool rational() const { return rational_; }
  /// Whether the structure theorem's hypothesis (G connected and rational)
  /// holds, so that non-F[U] subcomplex homology is an error.
  bool strict() const { return strict_; }

  /// Truncated bifiltered complex of class index s, exact for sublevels
  /// up to top(B) + radius and for the dual sublevel likewise.
  KnotComplexSource source(std::size_t s, std::int64_t radius) const {
    const auto& cls = classes_.at(s);
    const Rational nv(static_cast<std::int64_t>(q_.size()));
    const Rational top = top_level(q_, cls);
    IntVector w(q_.size());
    for (std::size_t j = 0; j < w.size(); ++j) w[j] = 2 * sigma_.n[j];
    const Rational top2 = (min_shifted_norm(q_, cls.representative, w) - nv) / Rational(8);
    TruncationBox box;
    box.level = top + Rational(radius);
    box.dual = w;
    box.dual_level = top2 + Rational(radius);
    auto lc = build_bifiltered(q_, sigma_, cls, box);
    KnotComplexSource src;
    src.complex = std::move(lc.complex);
    const Rational l1 = *box.level, l2 = box.dual_level;
    src.cap = [l1, l2](SubKind kind, const Rational& i) -> std::optional<Rational> {
      if (kind == SubKind::C) return l2 - i;
      return l1;
    };
    return src;
  }

  const StaircaseData& staircase(std::size_t s) const {
    auto it = cache_.find(s);
    if (it != cache_.end()) return it->second;
    for (std::int64_t radius = 4; radius <= 4 * lopt_.nmax + 16; radius += 4) {
      try {
        auto sd = staircase_from_source(source(s, radius), strict_, sopt_);
        sd.spinc = s;
        if (!rational_) sd.warnings.insert(sd.warnings.begin(), "background graph is not rational");
        else if (!strict_) sd.warnings.insert(sd.warnings.begin(), "background graph is not connected");
        return cache_.emplace(s, std::move(sd)).first->second;
      } catch (const TruncationTooSmall&) {
      }
    }
    throw ConsistencyError("staircase: truncation never captured the generators");
  }

  /// d-invariant of class s and a zero-cube representative. For rational G
  /// the representative is the extremal one and its grading is checked
  /// against the lattice homology.
  std::pair<Rational, CharVector> d_representative(std::size_t s) const {
    const auto& cls = classes_.at(s);
    const auto lh = lattice_homology(q_, cls, lopt_);
    const Rational d = lh.module.free.at(0);
    if (rational_) {
      check_consistent(extremal_grading(q_, cls) == d, "d-invariant differs from the extremal grading");
      return {d, cls.representative};
    }
    const auto dv = d_invariant(q_, cls, lopt_);
    if (!dv.representative) throw ConsistencyError("d-invariant representative not found");
    return {d, *dv.representative};
  }

  /// The class twisted by n[v0].
  std::size_t twisted(std::size_t s, std::int64_t n) const {
    return twist(q_, classes_, classes_.at(s), mg_, n).index;
  }

private:
  MarkedGraph mg_;
  QuadraticForm q_;
  std::vector<SpincClass> classes_;
  SigmaClass sigma_;
  LatticeOptions lopt_;
  StaircaseOptions sopt_;
  bool rational_;
  bool strict_;
  mutable std::map<std::size_t, StaircaseData> cache_;
};

/// Staircase of a finite bifiltered complex (no truncation).
inline StaircaseData staircase_of_complex(const BifilteredComplex& c, bool strict = true,
                                          const StaircaseOptions& opt = {}) {
  KnotComplexSource src{c, [](SubKind, const Rational&) { return std::optional<Rational>{}; }};
  return staircase_from_source(src, strict, opt);
}

/// Extension L of K to G_{-k}(v0) with (L(Sigma) + Sigma^2)/2 = i, and L^2
/// computed with the inverse of the big intersection form.
struct Extension {
  IntVector values;  // on the vertices of G_{-k}(v0)
  Rational square;
};

inline Extension extend_class(const KnotContext& kc, const QuadraticForm& big, std::int64_t k, const CharVector& kv,
                              const Rational& i) {
  const auto& mg = kc.marked();
  const Rational sig2 = kc.sigma().square(-k);
  const Rational lv0 = Rational(2) * i - sig2 - kc.sigma().pairing(kv);
  if (!lv0.is_integer()) throw InputError("level " + i.str() + " gives a non-integral extension");
  Extension ext;
  ext.values.assign(big.size(), 0);
  for (std::size_t j = 0; j < mg.graph.size(); ++j) ext.values[big.graph().index_of(mg.graph.id(j))] = kv[j];
  ext.values[big.graph().index_of(mg.v0)] = lv0.to_integer();
  CharVector l{ext.values};
  if (!big.is_characteristic(l)) throw InputError("extension at level " + i.str() + " is not characteristic");
  ext.square = big.square(l);
  return ext;
}

/// (d(s) - d(s_v0))/2 + ((L^2 - K^2) - (L'^2 - K'^2))/8, with L at level i
/// and L' extending the representative of s_v0 at level i + alpha.
inline Rational predicted_ab_difference(const KnotContext& kc, std::size_t s, const Rational& i, std::int64_t k) {
  const auto big_graph = with_framing(kc.marked(), -k);
  const QuadraticForm big(big_graph);
  const auto s1 = kc.twisted(s, 1);
  const auto [d0, kv0] = kc.d_representative(s);
  const auto [d1, kv1] = kc.d_representative(s1);
  const Rational alpha = kc.sigma().square(-k);
  const auto l0 = extend_class(kc, big, k, kv0, i);
  const auto l1 = extend_class(kc, big, k, kv1, i + alpha);
  const Rational k0 = kc.form().square(kv0), k1 = kc.form().square(kv1);
  return (d0 - d1) / Rational(2) + ((l0.square - k0) - (l1.square - k1)) / Rational(8);
}

/// Smallest k with G_{-k}(v0) negative definite.
inline std::int64_t min_admissible_k(const KnotContext& kc) {
  return kc.sigma().an.floor() + 1;
}

}  // namespace plumbo

#endif  // PLUMBO_KNOT_HPP
