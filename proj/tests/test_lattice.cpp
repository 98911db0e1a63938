#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <numeric>
#include <set>

#include "plumbo/fixtures.hpp"
#include "plumbo/lattice.hpp"

using namespace plumbo;

namespace {

// min over I of (K(I) + I^2)/2, straight from the definition
std::int64_t weight_oracle(const IntMatrix& m, const CharVector& k, const std::vector<std::size_t>& e) {
  std::int64_t best = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << e.size()); ++mask) {
    std::int64_t kk = 0, ii = 0;
    for (std::size_t a = 0; a < e.size(); ++a) {
      if (!((mask >> a) & 1U)) continue;
      kk += k[e[a]];
      for (std::size_t b = 0; b < e.size(); ++b)
        if ((mask >> b) & 1U) ii += m[e[a]][e[b]];
    }
    best = std::min(best, (kk + ii) / 2);
  }
  return best;
}

// number of connected components of the sublevel set {level <= lambda}
std::size_t components(const QuadraticForm& q, const SpincClass& s, const Rational& lambda) {
  const auto pts = truncation_points(q, s.representative, TruncationBox::sublevel(lambda));
  std::map<CharVector, std::size_t> id;
  for (const auto& k : pts) id.emplace(k, id.size());
  std::vector<std::size_t> parent(pts.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  std::size_t n = pts.size();
  for (const auto& k : pts)
    for (std::size_t v = 0; v < q.size(); ++v) {
      const Rational lvl = (Rational(1) - maslov_grading(q, k, {v})) / Rational(2);
      if (lvl > lambda) continue;
      const auto other = id.find(q.shift(k, v));
      REQUIRE(other != id.end());
      const auto a = find(id.at(k)), b = find(other->second);
      if (a != b) {
        parent[a] = b;
        --n;
      }
    }
  return n;
}

std::size_t dim_at(const GradedModule& m, const Rational& g) {
  std::size_t n = 0;
  for (const auto& f : m.free) {
    const Rational t = (f - g) / Rational(2);
    n += t.is_integer() && t >= Rational(0);
  }
  for (const auto& s : m.torsion) {
    const Rational t = (s.grading - g) / Rational(2);
    n += t.is_integer() && t >= Rational(0) && t < Rational(s.order);
  }
  return n;
}

}  // namespace

TEST_CASE("weights and gradings against the definition") {
  for (const auto& g : {fixtures::e8(), fixtures::sigma237(), fixtures::a_chain(3)}) {
    QuadraticForm q(g);
    for (const auto& s : spinc_classes(q)) {
      const auto lc = build_complex(q, s, TruncationBox::box(1));
      for (const auto& c : lc.cubes) CHECK(g_weight(q, c.k, c.e) == weight_oracle(q.matrix(), c.k, c.e));
    }
  }
}

TEST_CASE("one-vertex (-1): boundary of the 1-cube and homology") {
  QuadraticForm q(fixtures::one_vertex(-1));
  const CharVector k{{-1}};
  CHECK(g_weight(q, k, {0}) == -1);
  CHECK(maslov_grading(q, k, {0}) == Rational(-1));
  CHECK(maslov_grading(q, k, {}) == Rational(0));
  const auto d = boundary(q, k, {0});
  REQUIRE(d.size() == 2);
  CHECK(d[0].exponent == 1);
  CHECK(d[0].face.k.values == IntVector{-1});
  CHECK(d[1].exponent == 0);
  CHECK(d[1].face.k.values == IntVector{-3});
  const auto lh = lattice_homology(fixtures::one_vertex(-1), 0);
  CHECK(lh.module.str() == "T_0");
  CHECK(is_lspace(fixtures::one_vertex(-1)));
}

TEST_CASE("lens spaces L(p,1): d from the closed formula") {
  for (std::int64_t p = 1; p <= 7; ++p) {
    std::multiset<Rational> expect, got;
    for (std::int64_t k = -p + 2; k <= p; k += 2) expect.insert((Rational(1) - Rational(k * k, p)) / Rational(4));
    QuadraticForm q(fixtures::one_vertex(-p));
    for (const auto& s : spinc_classes(q)) {
      const auto lh = lattice_homology(q, s);
      REQUIRE(lh.module.is_free_rank_one());
      got.insert(lh.module.free[0]);
      const auto dv = d_invariant(q, s);
      REQUIRE(dv.representative.has_value());
      CHECK((q.square(*dv.representative) + Rational(1)) / Rational(4) == dv.d);
    }
    CHECK(got == expect);
  }
}

TEST_CASE("classical graphs") {
  CHECK(lattice_homology(fixtures::e8(), 0).module.str() == "T_2");
  for (std::size_t n = 1; n <= 4; ++n) CHECK(is_lspace(fixtures::a_chain(n)));
  const auto lh = lattice_homology(fixtures::sigma237(), 0);
  CHECK(lh.module.free.size() == 1);
  CHECK_FALSE(lh.module.torsion.empty());
  CHECK(lh.by_delta.size() == 1);
  CHECK_FALSE(is_lspace(fixtures::sigma237()));
  const auto d2 = lattice_homology(fixtures::one_vertex(-2), 0).module.free;
  CHECK(d2 == std::vector<Rational>{Rational(1, 4)});
}

TEST_CASE("degree-zero homology counts sublevel components") {
  for (const auto& g : {fixtures::sigma237(), fixtures::a_chain(3), fixtures::e8(), fixtures::one_vertex(-3),
                        fixtures::star(-2, {{-3}, {-3}, {-3}})}) {
    QuadraticForm q(g);
    for (const auto& s : spinc_classes(q)) {
      const auto lh = lattice_homology(q, s);
      const auto h0 = lh.by_delta.count(0) ? lh.by_delta.at(0) : GradedModule{};
      const Rational top = top_level(q, s);
      for (std::int64_t t = 0; t < 6; ++t) {
        const Rational lambda = top + Rational(t);
        if (lambda > lh.level) break;
        CHECK_MESSAGE(components(q, s, lambda) == dim_at(h0, Rational(-2) * lambda),
                      serialize_graph(g) << " class " << s.index << " level " << lambda.str());
      }
    }
  }
}

TEST_CASE("box complexes satisfy d^2 = 0 and the grading law") {
  for (const auto& nm : fixtures::all()) {
    const auto* g = std::get_if<PlumbingGraph>(&nm.doc);
    if (!g || g->size() > 7) continue;
    QuadraticForm q(*g);
    for (const auto& s : spinc_classes(q)) {
      const auto lc = build_complex(q, s, TruncationBox::box(1));
      CHECK_NOTHROW(lc.complex.validate());
      CHECK(lc.complex.size() == lc.cubes.size());
    }
  }
}

TEST_CASE("stabilisation does not depend on nmax") {
  QuadraticForm q(fixtures::sigma237());
  const auto s = spinc_classes(q).at(0);
  LatticeOptions a, b;
  a.nmax = 6;
  b.nmax = 10;
  CHECK(lattice_homology(q, s, a).module == lattice_homology(q, s, b).module);
}
