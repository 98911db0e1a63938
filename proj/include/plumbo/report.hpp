#ifndef PLUMBO_REPORT_HPP
#define PLUMBO_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "plumbo/bifiltered.hpp"
#include "plumbo/complex.hpp"
#include "plumbo/cone.hpp"
#include "plumbo/graph.hpp"
#include "plumbo/knot.hpp"
#include "plumbo/lattice.hpp"
#include "plumbo/model.hpp"
#include "plumbo/rationality.hpp"
#include "plumbo/spinc.hpp"

// JSON documents behind the command-line reports. Rationals are written as
// exact strings; arrays keep the library's deterministic orders.
namespace plumbo::report {

using nlohmann::json;

inline json ints(const IntVector& v) { return json(v); }

inline json rationals(const std::vector<Rational>& v) {
  json j = json::array();
  for (const auto& x : v) j.push_back(x.str());
  return j;
}

inline json rational(const PlumbingGraph& g) {
  json j;
  const auto laufer = is_rational(g, RationalityMethod::laufer);
  const auto genus = is_rational(g, RationalityMethod::genus);
  j["rational"] = laufer.rational;
  j["laufer"] = laufer.rational;
  j["genus"] = genus.rational;
  j["agree"] = laufer.rational == genus.rational;
  j["trace"] = json::array();
  for (const auto& z : laufer.trace) j["trace"].push_back(ints(z));
  if (genus.artin) j["artin_cycle"] = ints(genus.artin->coefficients);
  if (g.components().size() == 1 && !laufer.rational) {
    const auto w = is_almost_rational(g);
    j["almost_rational"] = w.has_value();
    if (w) j["almost_rational_vertex"] = g.id(w->vertex);
  }
  return j;
}

inline json homology(const PlumbingGraph& g, const LatticeOptions& lopt) {
  require_negative_definite(g, "homology");
  QuadraticForm q(g);
  json out = json::array();
  for (const auto& s : spinc_classes(q)) {
    const auto lh = lattice_homology(q, s, lopt);
    json by_delta = json::object();
    for (const auto& [d, m] : lh.by_delta) by_delta[std::to_string(d)] = to_json(m);
    out.push_back({{"class", s.index},
                   {"representative", ints(s.representative.values)},
                   {"module", to_json(lh.module)},
                   {"summary", lh.module.str()},
                   {"by_delta", by_delta},
                   {"stage", lh.stage},
                   {"generators", lh.generators}});
  }
  return out;
}

inline json dinv(const PlumbingGraph& g, const LatticeOptions& lopt) {
  require_negative_definite(g, "dinv");
  QuadraticForm q(g);
  json out = json::array();
  for (const auto& s : spinc_classes(q)) {
    const auto d = d_invariant(q, s, lopt);
    json row{{"class", s.index}, {"d", d.d.str()}, {"extremal", extremal_grading(q, s).str()}};
    if (d.representative) row["representative"] = ints(d.representative->values);
    out.push_back(row);
  }
  return out;
}

inline json delta(const PlumbingGraph& g, const LatticeOptions& lopt) {
  require_negative_definite(g, "delta");
  QuadraticForm q(g);
  json out = json::array();
  for (const auto& s : spinc_classes(q)) {
    json by = json::object();
    for (const auto& [d, m] : delta_split(q, s, lopt)) by[std::to_string(d)] = m.str();
    out.push_back({{"class", s.index}, {"by_delta", by}});
  }
  return out;
}

inline json lspace(const PlumbingGraph& g, const LatticeOptions& lopt) {
  return {{"lspace", is_lspace(g, lopt)}};
}

inline json staircase(const StaircaseData& sd) {
  json lv = json::array();
  for (const auto& l : sd.normalized_levels()) lv.push_back({{"i", l.i.str()}, {"a", l.a}, {"b", l.b}, {"d", l.d}});
  json viol = json::array();
  for (const auto& v : staircase_violations(sd)) viol.push_back(v);
  return {{"class", sd.spinc},   {"q", sd.q.str()},       {"shift", sd.shift.str()},
          {"i_s", sd.i_s.str()}, {"jumps", rationals(sd.jumps)}, {"levels", lv},
          {"warnings", sd.warnings}, {"violations", viol}};
}

inline json knot(const KnotContext& kc) {
  json out = json::array();
  for (std::size_t s = 0; s < kc.classes().size(); ++s) out.push_back(staircase(kc.staircase(s)));
  return {{"alpha_dot_n", kc.sigma().an.str()}, {"min_k", min_admissible_k(kc)}, {"classes", out}};
}

inline json model(const KnotContext& kc) {
  json out = json::array();
  for (std::size_t s = 0; s < kc.classes().size(); ++s) {
    const auto m = extract_model(kc.staircase(s));
    auto row = to_json(m);
    row["class"] = s;
    row["name"] = m.str();
    row["warnings"] = m.check().warnings;
    out.push_back(row);
  }
  return out;
}

inline json cone(const KnotContext& kc, std::int64_t k, const LatticeOptions& lopt) {
  SurgeryGraph sg(kc, k);
  json out = json::array();
  for (std::size_t t = 0; t < sg.classes.size(); ++t) {
    const auto cr = cone_homology(kc, sg, t, lopt);
    out.push_back({{"class", t},
                   {"module", to_json(cr.module)},
                   {"summary", cr.module.str()},
                   {"i", cr.i.str()},
                   {"alpha", cr.alpha.str()},
                   {"window", {cr.n_lo, cr.n_hi}},
                   {"chain_level", cr.chain_level},
                   {"free_in_b_row", cr.free_in_b_row}});
  }
  return {{"k", k}, {"classes", out}};
}

inline json verify(const KnotContext& kc, std::int64_t k, const LatticeOptions& lopt, bool& all_equal) {
  json out = json::array();
  for (const auto& c : verify_surgery(kc, k, lopt)) {
    all_equal = all_equal && c.equal && c.free_in_b_row;
    out.push_back({{"class", c.t},
                   {"cone", c.cone.str()},
                   {"direct", c.direct.str()},
                   {"equal", c.equal},
                   {"free_in_b_row", c.free_in_b_row},
                   {"i", c.i.str()},
                   {"alpha", c.alpha.str()},
                   {"window", {c.n_lo, c.n_hi}}});
  }
  return {{"k", k}, {"classes", out}};
}

inline json hfminus(const PlumbingGraph& g, std::size_t w, const LatticeOptions& lopt, bool& all_equal) {
  json out = json::array();
  for (const auto& h : hf_via_cone(g, w, lopt)) {
    all_equal = all_equal && h.equal;
    out.push_back({{"class", h.t}, {"cone", h.cone.str()}, {"direct", h.direct.str()}, {"equal", h.equal}});
  }
  return {{"vertex", g.id(w)}, {"classes", out}};
}

/// First vertex whose removal leaves only rational components.
inline std::size_t default_cone_vertex(const PlumbingGraph& g) {
  for (std::size_t w = 0; w < g.size(); ++w) {
    if (g.size() == 1) break;
    const auto mg = mark_vertex(g, w);
    if (is_rational(mg.graph, RationalityMethod::laufer).rational) return w;
  }
  throw InputError("hfminus: no vertex leaves rational components");
}

}  // namespace plumbo::report

#endif  // PLUMBO_REPORT_HPP
