#ifndef PLUMBO_CONE_HPP
#define PLUMBO_CONE_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "plumbo/complex.hpp"
#include "plumbo/errors.hpp"
#include "plumbo/graph.hpp"
#include "plumbo/knot.hpp"
#include "plumbo/lattice.hpp"
#include "plumbo/rationality.hpp"
#include "plumbo/spinc.hpp"

namespace plumbo {

/// One column of the mapping cone: A_{i_n}(s_n) over B(s_n).
struct ConeBlock {
  std::int64_t n = 0;
  std::size_t spinc = 0;  // index of s_n among the classes of G
  Rational level;         // i_n, unnormalized
  Rational shift;         // (L(Sigma)^2 / Sigma^2 + 1)/4
  std::int64_t a = 0, b = 0;
};

/// The surgery graph G_{-k}(v0) with its form and classes.
struct SurgeryGraph {
  PlumbingGraph graph;
  QuadraticForm form;
  std::vector<SpincClass> classes;
  std::int64_t k;

  SurgeryGraph(const KnotContext& kc, std::int64_t k_)
      : graph(with_framing(kc.marked(), -k_)), form(graph), classes(spinc_classes(form)), k(k_) {}
};

/// Block data of the class t on G_{-k}(v0) for n in [lo, hi]; asserts the
/// twisting law and that the levels form an arithmetic progression with
/// step Sigma^2.
inline std::vector<ConeBlock> block_levels(const KnotContext& kc, const SurgeryGraph& sg, std::size_t t,
                                           std::int64_t lo, std::int64_t hi) {
  const auto& mg = kc.marked();
  const std::size_t iv0 = sg.graph.index_of(mg.v0);
  const Rational sig2 = kc.sigma().square(-sg.k);
  const auto& l0 = sg.classes.at(t).representative;
  std::vector<ConeBlock> out;
  std::optional<std::size_t> s0;
  for (std::int64_t n = lo; n <= hi; ++n) {
    const CharVector ln = sg.form.shift(l0, iv0, n);
    CharVector kv;
    for (std::size_t j = 0; j < mg.graph.size(); ++j) kv.values.push_back(ln[sg.graph.index_of(mg.graph.id(j))]);
    ConeBlock blk;
    blk.n = n;
    blk.spinc = class_index(kc.form(), kc.classes(), kv);
    const Rational lsig = Rational(ln[iv0]) + kc.sigma().pairing(kv);
    blk.level = (lsig + sig2) / Rational(2);
    blk.shift = (lsig * lsig / sig2 + Rational(1)) / Rational(4);
    if (!s0) s0 = kc.twisted(blk.spinc, -n);
    check_consistent(kc.twisted(*s0, n) == blk.spinc, "block classes do not follow the twisting law");
    out.push_back(blk);
  }
  if (out.size() >= 2) {
    const Rational alpha = out[1].level - out[0].level;
    const Rational i0 = out[0].level - alpha * Rational(out[0].n);
    for (const auto& blk : out)
      check_consistent(blk.level == i0 + alpha * Rational(blk.n), "block levels are not an arithmetic progression");
    check_consistent(alpha == sig2, "block level step differs from Sigma^2");
  }
  return out;
}

struct ConeResult {
  GradedModule module;
  std::int64_t n_lo = 0, n_hi = 0;  // blocks kept before contraction
  Rational i, alpha;                 // block n sits at level i + alpha n
  bool free_in_b_row = false;
  bool chain_level = false;
  std::vector<ConeBlock> blocks;
};

namespace detail {

/// Half-width N so that blocks with |n| > N are in the tails of every class.
inline std::int64_t cone_half_width(const KnotContext& kc, const Rational& i0, const Rational& alpha) {
  Rational top, bot;
  bool first = true;
  for (std::size_t s = 0; s < kc.classes().size(); ++s) {
    const auto& sd = kc.staircase(s);
    if (first || sd.i_top() > top) top = sd.i_top();
    if (first || sd.i_bot() < bot) bot = sd.i_bot();
    first = false;
  }
  const Rational step = -alpha;
  const Rational need = std::max(top - i0, i0 - bot);
  return std::max<std::int64_t>(1, (need / step).ceil() + 1);
}

}  // namespace detail

/// Homology of the two-row cone for class t on G_{-k}(v0), one F[U] per
/// block. Blocks beyond the window are in the tails (a = 0 on the left,
/// b = 0 on the right) and cancel in pairs, so the finite cone on [-N, N]
/// computes the same homology. `extra` widens the window for contraction
/// tests.
inline ConeResult homology_level_cone(const KnotContext& kc, const SurgeryGraph& sg, std::size_t t,
                                      std::int64_t extra = 0) {
  if (!kc.rational()) throw InputError("cone_homology: background graph has a non-rational component");
  const auto probe = block_levels(kc, sg, t, 0, 1);
  ConeResult res;
  res.alpha = probe[1].level - probe[0].level;
  res.i = probe[0].level;
  const std::int64_t half = detail::cone_half_width(kc, res.i, res.alpha) + extra;
  res.n_lo = -half;
  res.n_hi = half;
  res.blocks = block_levels(kc, sg, t, res.n_lo, res.n_hi + 1);

  GradedFreeComplex cone;
  std::vector<std::size_t> a_gen, b_gen;
  for (auto& blk : res.blocks) {
    const auto& sd = kc.staircase(blk.spinc);
    if (!(blk.level - sd.i_bot()).is_integer())
      throw ConsistencyError("block level " + blk.level.str() + " is off the staircase lattice");
    blk.a = sd.a(blk.level);
    blk.b = sd.b(blk.level);
    b_gen.push_back(cone.add_generator(
        Generator{"B" + std::to_string(blk.n), sd.q + blk.shift, 0, Rational(0)}));
  }
  for (std::size_t j = 0; j + 1 < res.blocks.size(); ++j) {
    const auto& blk = res.blocks[j];
    const auto& sd = kc.staircase(blk.spinc);
    const Rational qa = sd.q - Rational(2 * blk.a);
    a_gen.push_back(cone.add_generator(
        Generator{"A" + std::to_string(blk.n), qa + blk.shift + Rational(1), 1, Rational(0)}));
    const auto x = a_gen.back();
    cone.toggle(x, b_gen[j], blk.a);
    const Rational diag = (cone.generator(b_gen[j + 1]).maslov - cone.generator(x).maslov + Rational(1)) / Rational(2);
    check_consistent(diag == Rational(blk.b), "diagonal exponent " + diag.str() + " differs from b = " +
                                                  std::to_string(blk.b) + " in block " + std::to_string(blk.n));
    cone.toggle(x, b_gen[j + 1], blk.b);
  }
  cone.validate();
  Reduction red(cone);
  res.module = red.module();
  res.free_in_b_row = red.essential().size() == 1 && cone.generator(red.essential()[0]).degree == 0;
  res.blocks.pop_back();
  return res;
}

/// The cone built from the lattice complexes themselves: block n is
/// A_{i_n}(s_n) -> B(s_n) + B(s_{n+1}), the second arrow being
/// [K,E] -> U^{max(0, i-A)} [K + 2n, E]. The block shift sends far blocks to
/// high levels, so each sublevel of the infinite cone is finite; it is
/// stabilised like lattice homology.
inline ConeResult chain_level_cone(const KnotContext& kc, const SurgeryGraph& sg, std::size_t t,
                                   const LatticeOptions& lopt = {}) {
  const auto& q = kc.form();
  const auto& sc = kc.sigma();
  ConeResult res;
  res.chain_level = true;
  const auto probe = block_levels(kc, sg, t, 0, 1);
  res.alpha = probe[1].level - probe[0].level;
  res.i = probe[0].level;

  // Lowest cone level of block n is top(s_n) - shift_n / 2, convex in n.
  std::map<std::int64_t, ConeBlock> blk;
  auto block = [&](std::int64_t n) -> const ConeBlock& {
    auto it = blk.find(n);
    if (it == blk.end()) it = blk.emplace(n, block_levels(kc, sg, t, n, n).front()).first;
    return it->second;
  };
  auto floor_of = [&](std::int64_t n) {
    const auto& b = block(n);
    return top_level(q, kc.classes()[b.spinc]) - b.shift / Rational(2);
  };
  Rational bottom = floor_of(0);
  std::int64_t center = 0;
  for (std::int64_t n = 1;; ++n) {
    const Rational l = std::min(floor_of(n), floor_of(-n));
    if (l > bottom + Rational(4)) break;
    if (l < bottom) {
      bottom = l;
      center = floor_of(n) == l ? n : -n;
    }
  }
  IntVector twist_vec(q.size());
  for (std::size_t j = 0; j < q.size(); ++j) twist_vec[j] = 2 * sc.n[j];

  std::string last;
  for (int stage = 2; stage < lopt.nmax; ++stage) {
    const Rational lo = bottom + Rational(stage), hi = lo + Rational(1);
    std::int64_t n_lo = center, n_hi = center;
    while (floor_of(n_lo - 1) <= hi) --n_lo;
    while (floor_of(n_hi + 1) <= hi) ++n_hi;
    --n_lo;  // block n_lo - 1 contributes nothing; keeps B_{n_lo} a target

    std::map<std::size_t, Rational> cap_of;  // largest B sublevel needed per class
    for (std::int64_t n = n_lo; n <= n_hi + 1; ++n) {
      const auto& b = block(n);
      const Rational c = hi + b.shift / Rational(2);
      auto [it, fresh] = cap_of.emplace(b.spinc, c);
      if (!fresh && c > it->second) it->second = c;
    }
    struct Built {
      LatticeComplex lc;
      std::map<CubeGenerator, std::size_t> index;
    };
    std::map<std::size_t, Built> built;
    for (const auto& [s, c] : cap_of) {
      Built b;
      b.lc = build_bifiltered(q, sc, kc.classes()[s], TruncationBox::sublevel(c));
      for (std::size_t x = 0; x < b.lc.cubes.size(); ++x) b.index.emplace(b.lc.cubes[x], x);
      built.emplace(s, std::move(b));
    }

    GradedFreeComplex cone;
    std::map<std::int64_t, detail::SubView> a_view, b_view;
    std::map<std::int64_t, std::vector<std::size_t>> a_id, b_id;
    auto add_view = [&](const detail::SubView& v, std::int64_t n, const char* row, const Rational& shift,
                        std::int64_t dshift) {
      std::vector<std::size_t> ids;
      for (const auto& g : v.complex.generators())
        ids.push_back(cone.add_generator(Generator{std::string(row) + std::to_string(n) + ":" + g.label,
                                                  g.maslov + shift + Rational(dshift), g.degree + dshift,
                                                  Rational(0)}));
      for (std::size_t x = 0; x < v.complex.size(); ++x)
        for (const auto& en : v.complex.boundary(x)) cone.toggle(ids[x], ids[en.target], en.exponent);
      return ids;
    };
    for (std::int64_t n = n_lo; n <= n_hi + 1; ++n) {
      const auto& b = block(n);
      KnotComplexSource src{built.at(b.spinc).lc.complex, {}};
      const Rational c = hi + b.shift / Rational(2);
      b_view.emplace(n, detail::sub_view(src, SubKind::B, Rational(0), c));
      b_id[n] = add_view(b_view.at(n), n, "B", b.shift, 0);
      if (n > n_hi) continue;
      a_view.emplace(n, detail::sub_view(src, SubKind::A, b.level, c));
      a_id[n] = add_view(a_view.at(n), n, "A", b.shift, 1);
    }
    for (std::int64_t n = n_lo; n <= n_hi; ++n) {
      const auto& b = block(n);
      const auto& src = built.at(b.spinc);
      const auto& nxt = built.at(block(n + 1).spinc);
      const auto& av = a_view.at(n);
      for (std::size_t x = 0; x < av.local.size(); ++x) {
        if (av.local[x] == detail::npos) continue;
        const auto from = a_id[n][av.local[x]];
        const Rational da = src.lc.complex.generator(x).alexander - b.level;
        const auto up = std::max<std::int64_t>(0, da.to_integer());
        const auto bx = b_view.at(n).local[x];
        check_consistent(bx != detail::npos, "vertical arrow leaves the B block");
        cone.toggle(from, b_id[n][bx], up);
        CubeGenerator y = src.lc.cubes[x];
        for (std::size_t j = 0; j < y.k.values.size(); ++j) y.k.values[j] += twist_vec[j];
        const auto it = nxt.index.find(y);
        check_consistent(it != nxt.index.end(), "diagonal arrow leaves the truncation");
        const auto by = b_view.at(n + 1).local[it->second];
        check_consistent(by != detail::npos, "diagonal arrow leaves the next B block");
        cone.toggle(from, b_id[n + 1][by], std::max<std::int64_t>(0, (-da).to_integer()));
      }
    }
    cone.validate();
    Reduction red(cone);
    const auto m_lo = red.module(lo), m_hi = red.module(hi);
    bool crossing = false;
    for (const auto& pr : red.pairs())
      if (red.level(pr.birth) <= lo && red.level(pr.death) > lo) crossing = true;
    last = m_lo.str();
    if (m_lo.free.size() == 1 && m_hi.free.size() == 1 && !crossing) {
      res.module = m_lo;
      res.n_lo = n_lo + 1;
      res.n_hi = n_hi;
      for (std::int64_t n = res.n_lo; n <= n_hi; ++n) res.blocks.push_back(block(n));
      std::size_t free_gen = 0;
      for (auto g : red.essential())
        if (red.level(g) <= lo) free_gen = g;
      res.free_in_b_row = cone.generator(free_gen).label.front() == 'B';
      return res;
    }
  }
  throw ConsistencyError("chain-level cone did not stabilise by N = " + std::to_string(lopt.nmax) +
                         "; last stage gave " + last);
}

/// Whether some class of G has a subcomplex homology other than F[U].
inline bool has_torsion_blocks(const KnotContext& kc) {
  for (std::size_t s = 0; s < kc.classes().size(); ++s)
    for (const auto& w : kc.staircase(s).warnings)
      if (w.find("not F[U]") != std::string::npos) return true;
  return false;
}

/// Homology-level cone when every block is F[U], chain-level otherwise.
inline ConeResult cone_homology(const KnotContext& kc, const SurgeryGraph& sg, std::size_t t,
                                const LatticeOptions& lopt = {}) {
  if (!kc.rational()) throw InputError("cone_homology: background graph has a non-rational component");
  if (has_torsion_blocks(kc)) return chain_level_cone(kc, sg, t, lopt);
  return homology_level_cone(kc, sg, t);
}

struct SurgeryCheck {
  std::size_t t = 0;
  GradedModule cone, direct;
  bool equal = false;
  bool free_in_b_row = false;
  Rational i, alpha;
  std::int64_t n_lo = 0, n_hi = 0;
};

/// Cone versus direct lattice homology for every class of G_{-k}(v0).
inline std::vector<SurgeryCheck> verify_surgery(const KnotContext& kc, std::int64_t k,
                                                const LatticeOptions& lopt = {}) {
  SurgeryGraph sg(kc, k);
  std::vector<SurgeryCheck> out;
  for (std::size_t t = 0; t < sg.classes.size(); ++t) {
    SurgeryCheck c;
    c.t = t;
    const auto cr = cone_homology(kc, sg, t, lopt);
    c.cone = cr.module;
    c.direct = lattice_homology(sg.form, sg.classes[t], lopt).module;
    c.equal = c.cone == c.direct;
    c.free_in_b_row = cr.free_in_b_row;
    c.i = cr.i;
    c.alpha = cr.alpha;
    c.n_lo = cr.n_lo;
    c.n_hi = cr.n_hi;
    out.push_back(c);
  }
  return out;
}

struct ConeMinimum {
  std::int64_t k = 0;
  std::size_t t = 0;
  std::int64_t from_cone = 0;    // torsion order of the 3-generator cone
  std::int64_t from_direct = 0;  // torsion order of the lattice homology of G_{-k}(v0)
};

/// min{a_i, b_i} read off from surgery: with k large, the only blocks not
/// cancelled in the cone of the class whose block 0 sits at level i are
/// A_i -> B_0 + B_1, leaving torsion F[U]/U^{min}.
inline ConeMinimum contracted_cone_minimum(const KnotContext& kc, std::size_t s, const Rational& i,
                                           const LatticeOptions& lopt = {}) {
  const auto& sd = kc.staircase(s);
  const auto& prev = kc.staircase(kc.twisted(s, -1));
  const auto& next = kc.staircase(kc.twisted(s, 1));
  ConeMinimum out;
  for (std::int64_t k = min_admissible_k(kc);; ++k) {
    const Rational alpha = kc.sigma().square(-k);
    if (prev.a(i - alpha) == 0 && next.b(i + alpha) == 0) {
      out.k = k;
      break;
    }
    if (k > min_admissible_k(kc) + 256) throw ConsistencyError("contracted cone: no suitable k");
  }
  SurgeryGraph sg(kc, out.k);
  const auto kv = kc.classes().at(s).representative;
  const auto ext = extend_class(kc, sg.form, out.k, kv, i);
  out.t = class_index(sg.form, sg.classes, CharVector{ext.values});

  const std::int64_t a = sd.a(i), b = sd.b(i);
  GradedFreeComplex tiny;
  const auto x = tiny.add_generator(Generator{"A", Rational(1), 1, Rational(0)});
  const auto y0 = tiny.add_generator(Generator{"B0", Rational(2 * a), 0, Rational(0)});
  const auto y1 = tiny.add_generator(Generator{"B1", Rational(2 * b), 0, Rational(0)});
  tiny.toggle(x, y0, a);
  tiny.toggle(x, y1, b);
  const auto tm = homology(tiny);
  check_consistent(tm.torsion.size() <= 1 && tm.free.size() == 1, "contracted cone has unexpected shape");
  out.from_cone = tm.torsion.empty() ? 0 : tm.torsion[0].order;

  const auto direct = lattice_homology(sg.form, sg.classes.at(out.t), lopt).module;
  check_consistent(direct.free.size() == 1, "surgery lattice homology has free rank " +
                                                std::to_string(direct.free.size()));
  if (direct.torsion.size() > 1) throw ConsistencyError("surgery lattice homology has several torsion summands");
  out.from_direct = direct.torsion.empty() ? 0 : direct.torsion[0].order;
  return out;
}

struct HfViaCone {
  std::size_t t = 0;
  GradedModule cone, direct;
  bool equal = false;
};

/// HF^- of G when G - w has rational components: mark w, take k = -m_w,
/// and evaluate the cone per class; each answer is compared with the
/// direct lattice homology of G.
inline std::vector<HfViaCone> hf_via_cone(const PlumbingGraph& g, std::size_t w, const LatticeOptions& lopt = {}) {
  require_negative_definite(g, "hf_via_cone");
  const auto mg = mark_vertex(g, w);
  if (!is_rational(mg.graph, RationalityMethod::both).rational)
    throw InputError("hf_via_cone: G - w has a non-rational component");
  KnotContext kc(mg, lopt);
  SurgeryGraph sg(kc, -g.framing(w));
  check_consistent(sg.graph == g, "re-framed graph differs from the input");
  std::vector<HfViaCone> out;
  for (std::size_t t = 0; t < sg.classes.size(); ++t) {
    HfViaCone h;
    h.t = t;
    h.cone = cone_homology(kc, sg, t, lopt).module;
    h.direct = lattice_homology(sg.form, sg.classes[t], lopt).module;
    h.equal = h.cone == h.direct;
    out.push_back(h);
  }
  return out;
}

}  // namespace plumbo

#endif  // PLUMBO_CONE_HPP
