#ifndef PLUMBO_SELFTEST_HPP
#define PLUMBO_SELFTEST_HPP

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "plumbo/plumbo.hpp"

// The acceptance suite over the built-in fixtures. Each criterion yields a
// JSON record with "pass" and enough detail to see what failed.
namespace plumbo::selftest {

using nlohmann::json;

struct Criterion {
  int id;
  std::string name;
  std::function<json()> run;
};

namespace detail {

inline bool has_non_fu(const StaircaseData& sd) {
  return std::any_of(sd.warnings.begin(), sd.warnings.end(),
                     [](const std::string& w) { return w.find("not F[U]") != std::string::npos; });
}

struct MarkFixture {
  std::string name;
  MarkedGraph mg;
  std::int64_t k_lo, k_hi;
};

inline std::vector<MarkFixture> marks() {
  return {{"unknot", fixtures::unknot_mark(), 2, 5},
          {"trefoil", fixtures::trefoil_mark(), 7, 10},
          {"trefoil-sum", fixtures::trefoil_sum_mark(), 13, 14}};
}

/// Knot contexts are shared between criteria; staircases are cached inside.
inline const KnotContext& context(const std::string& name) {
  static std::map<std::string, KnotContext> cache;
  auto it = cache.find(name);
  if (it == cache.end())
    for (const auto& f : marks())
      if (f.name == name) it = cache.emplace(name, KnotContext(f.mg)).first;
  return it->second;
}

inline json fail(json detail, const std::string& why) {
  detail["pass"] = false;
  detail["failures"].push_back(why);
  return detail;
}

}  // namespace detail

inline json differential_soundness() {
  json out{{"pass", true}, {"complexes", 0}, {"failures", json::array()}};
  std::size_t count = 0;
  auto run = [&](const std::string& what, const std::function<void()>& f) {
    try {
      f();
    } catch (const std::exception& e) {
      out = detail::fail(out, what + ": " + e.what());
    }
  };
  for (const auto& g : fixtures::corpus()) {
    QuadraticForm q(g);
    for (const auto& s : spinc_classes(q))
      for (std::int64_t n = 1; n <= 2; ++n)
        run(serialize_graph(g), [&] {
          build_complex(q, s, TruncationBox::box(n), {}, false);  // validates
          ++count;
        });
  }
  for (const auto& f : fixtures::all()) {
    if (const auto* g = std::get_if<PlumbingGraph>(&f.doc)) {
      QuadraticForm q(*g);
      for (const auto& s : spinc_classes(q))
        run(f.name, [&] {
          build_complex(q, s, TruncationBox::sublevel(top_level(q, s) + Rational(2)));
          ++count;
        });
    } else {
      const auto& mg = std::get<MarkedGraph>(f.doc);
      KnotContext kc(mg);
      for (std::size_t s = 0; s < kc.classes().size(); ++s)
        run(f.name, [&] {
          auto src = kc.source(s, 2);
          src.complex.validate();
          src.complex.validate_filtration();
          ++count;
        });
    }
  }
  out["complexes"] = count;
  return out;
}

inline json rationality_agreement() {
  json out{{"pass", true}, {"graphs", 0}, {"failures", json::array()}};
  std::size_t count = 0;
  for (const auto& g : fixtures::corpus()) {
    if (g.components().size() != 1) continue;
    ++count;
    const bool l = is_rational(g, RationalityMethod::laufer).rational;
    const bool a = is_rational(g, RationalityMethod::genus).rational;
    if (l != a) out = detail::fail(out, "methods disagree on " + serialize_graph(g));
  }
  out["graphs"] = count;
  if (!is_rational(fixtures::e8()).rational) out = detail::fail(out, "E8 not rational");
  for (std::size_t n = 1; n <= 4; ++n)
    if (!is_rational(fixtures::a_chain(n)).rational) out = detail::fail(out, "A" + std::to_string(n) + " not rational");
  if (is_rational(fixtures::sigma237()).rational) out = detail::fail(out, "Sigma(2,3,7) rational");
  return out;
}

inline json rational_homology() {
  json out{{"pass", true}, {"classes", 0}, {"failures", json::array()}};
  std::size_t count = 0;
  for (const auto& g : fixtures::corpus()) {
    if (!is_rational(g, RationalityMethod::laufer).rational) continue;
    QuadraticForm q(g);
    for (const auto& s : spinc_classes(q)) {
      ++count;
      const auto lh = lattice_homology(q, s);
      if (!lh.module.is_free_rank_one() || lh.by_delta.size() != 1 || !lh.by_delta.count(0))
        out = detail::fail(out, serialize_graph(g) + " class " + std::to_string(s.index) + ": " + lh.module.str());
    }
  }
  out["classes"] = count;
  QuadraticForm q(fixtures::sigma237());
  const auto lh = lattice_homology(q, spinc_classes(q).at(0));
  out["sigma237"] = lh.module.str();
  if (lh.by_delta.size() != 1 || !lh.by_delta.count(0) || lh.module.torsion.empty())
    out = detail::fail(out, "Sigma(2,3,7): " + lh.module.str());
  return out;
}

inline json d_invariants() {
  json out{{"pass", true}, {"failures", json::array()}};
  auto both = [&](const PlumbingGraph& g, const std::string& name) {
    QuadraticForm q(g);
    std::vector<Rational> ds;
    for (const auto& s : spinc_classes(q)) {
      const auto d = d_invariant(q, s).d;
      if (d != extremal_grading(q, s)) out = detail::fail(out, name + ": lattice and extremal d differ");
      ds.push_back(d);
    }
    std::sort(ds.begin(), ds.end());
    out[name] = report::rationals(ds);
    return ds;
  };
  if (both(fixtures::one_vertex(-1), "one-1") != std::vector<Rational>{Rational(0)})
    out = detail::fail(out, "one-vertex (-1): d != 0");
  // (-2): classes K = 0 and K = 2 give (K^2 + 1)/4 = 1/4 and -1/4.
  if (both(fixtures::one_vertex(-2), "one-2") != std::vector<Rational>{Rational(-1, 4), Rational(1, 4)})
    out = detail::fail(out, "one-vertex (-2): d multiset");
  both(fixtures::e8(), "E8");
  return out;
}

inline json staircase_structure() {
  json out{{"pass", true}, {"failures", json::array()}};
  for (const auto& f : detail::marks()) {
    const auto& kc = detail::context(f.name);
    json rows = json::array();
    for (std::size_t s = 0; s < kc.classes().size(); ++s) {
      const auto& sd = kc.staircase(s);
      if (detail::has_non_fu(sd))
        for (const auto& w : sd.warnings)
          if (w.find("not F[U]") != std::string::npos) out = detail::fail(out, f.name + ": clause (1): " + w);
      for (const auto& v : staircase_violations(sd)) out = detail::fail(out, f.name + ": " + v);
      rows.push_back(report::rationals(sd.jumps));
    }
    out[f.name] = rows;
  }
  return out;
}

inline json contracted_minimum() {
  json out{{"pass", true}, {"levels", 0}, {"failures", json::array()}};
  std::size_t count = 0;
  for (const auto& f : detail::marks()) {
    const auto& kc = detail::context(f.name);
    for (std::size_t s = 0; s < kc.classes().size(); ++s)
      for (const auto& l : kc.staircase(s).levels) {
        ++count;
        const auto where = f.name + " class " + std::to_string(s) + " i=" + (l.i + kc.staircase(s).shift).str();
        try {
          const auto cm = contracted_cone_minimum(kc, s, l.i);
          const auto want = std::min(l.a, l.b);
          if (cm.from_cone != want || cm.from_direct != want)
            out = detail::fail(out, where + ": min(a,b)=" + std::to_string(want) + " cone " +
                                        std::to_string(cm.from_cone) + " direct " + std::to_string(cm.from_direct));
        } catch (const std::exception& e) {
          out = detail::fail(out, where + ": " + e.what());
        }
      }
  }
  out["levels"] = count;
  return out;
}

inline json ab_difference() {
  json out{{"pass", true}, {"levels", 0}, {"failures", json::array()}};
  std::size_t count = 0;
  for (const auto& f : detail::marks()) {
    const auto& kc = detail::context(f.name);
    const auto k = min_admissible_k(kc);
    for (std::size_t s = 0; s < kc.classes().size(); ++s)
      for (const auto& l : kc.staircase(s).levels) {
        ++count;
        const auto p = predicted_ab_difference(kc, s, l.i, k);
        if (p != Rational(l.a - l.b))
          out = detail::fail(out, f.name + " class " + std::to_string(s) + " i=" + l.i.str() + ": predicted " +
                                      p.str() + ", computed " + std::to_string(l.a - l.b));
      }
  }
  out["levels"] = count;
  return out;
}

inline json surgery_consistency() {
  json out{{"pass", true}, {"failures", json::array()}};
  for (const auto& f : detail::marks()) {
    const auto& kc = detail::context(f.name);
    json rows = json::array();
    for (auto k = f.k_lo; k <= f.k_hi; ++k) {
      bool ok = true;
      try {
        rows.push_back(report::verify(kc, k, {}, ok));
      } catch (const std::exception& e) {
        ok = false;
        rows.push_back({{"k", k}, {"error", e.what()}});
      }
      if (!ok) out = detail::fail(out, f.name + " k=" + std::to_string(k));
    }
    out[f.name] = rows;
  }
  return out;
}

inline json hf_cone() {
  json out{{"pass", true}, {"failures", json::array()}};
  const std::vector<std::pair<std::string, std::pair<PlumbingGraph, std::string>>> cases{
      {"chain-12", {fixtures::chain_12(), "c1"}},
      {"completed-trefoil", {fixtures::completed_trefoil(), "v0"}},
      {"type2", {fixtures::type2(), "w"}}};
  for (const auto& [name, gw] : cases) {
    bool ok = true;
    try {
      out[name] = report::hfminus(gw.first, gw.first.index_of(gw.second), {}, ok);
    } catch (const std::exception& e) {
      ok = false;
      out[name] = {{"error", e.what()}};
    }
    if (!ok) out = detail::fail(out, name);
  }
  return out;
}

inline json model_round_trips() {
  json out{{"pass", true}, {"failures", json::array()}};
  auto check = [&](const std::string& what, const std::function<bool()>& f) {
    try {
      if (!f()) out = detail::fail(out, what);
    } catch (const std::exception& e) {
      out = detail::fail(out, what + ": " + e.what());
    }
  };
  const ModelComplex unknot{Rational(0), {}, {Rational(0)}};
  const ModelComplex trefoil{Rational(0), {Rational(0)}, {Rational(1), Rational(-1)}};
  const ModelComplex two{Rational(0), {Rational(1), Rational(-1)}, {Rational(2), Rational(0), Rational(-2)}};
  for (const auto& m : {unknot, trefoil, two})
    check("round trip " + m.str(), [&] {
      const auto c = realize_model(m);
      return is_minimal(c) && extract_model(staircase_of_complex(c)) == m && homology(c).is_free_rank_one();
    });
  json extracted = json::object();
  for (const auto& f : detail::marks()) {
    const auto& kc = detail::context(f.name);
    json rows = json::array();
    for (std::size_t s = 0; s < kc.classes().size(); ++s)
      check(f.name + " class " + std::to_string(s) + " closure", [&] {
        const auto& sd = kc.staircase(s);
        const auto m = extract_model(sd);
        rows.push_back(m.str());
        return staircase_of_complex(realize_model(m)) == sd && model_equiv(kc, s, m);
      });
    extracted[f.name] = rows;
  }
  out["extracted"] = extracted;
  check("trefoil lattice complex ~ C(0; 0; 1,-1)", [&] { return model_equiv(detail::context("trefoil"), 0, trefoil); });
  check("tensor of trefoil models ~ trefoil#trefoil extraction", [&] {
    const auto t = realize_model(trefoil);
    const auto m = extract_model(detail::context("trefoil-sum").staircase(0));
    return model_equiv(tensor(t, t), m);
  });
  return out;
}

inline std::vector<Criterion> criteria() {
  return {{1, "differential soundness", differential_soundness},
          {2, "rationality oracle agreement", rationality_agreement},
          {3, "rational graphs have free lattice homology", rational_homology},
          {4, "d-invariants", d_invariants},
          {5, "staircase structure", staircase_structure},
          {6, "contracted cone minimum", contracted_minimum},
          {7, "predicted a - b", ab_difference},
          {8, "surgery consistency", surgery_consistency},
          {9, "hf via cone", hf_cone},
          {10, "model round trips", model_round_trips}};
}

/// Runs criteria 1-10; determinism (11) needs two runs and is checked by
/// the caller.
inline json run_all(const std::function<void(const Criterion&, const json&)>& on_result = {}) {
  json out = json::array();
  for (const auto& c : criteria()) {
    json r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {{"pass", false}, {"failures", {e.what()}}};
    }
    r["id"] = c.id;
    r["name"] = c.name;
    if (on_result) on_result(c, r);
    out.push_back(r);
  }
  return out;
}

}  // namespace plumbo::selftest

#endif  // PLUMBO_SELFTEST_HPP
