#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <set>

#include "plumbo/fixtures.hpp"
#include "plumbo/spinc.hpp"

using namespace plumbo;

namespace {

// every characteristic K with |K_i| <= r
std::vector<CharVector> box(const PlumbingGraph& g, std::int64_t r) {
  const auto m = g.framings();
  std::vector<CharVector> out;
  IntVector k(m.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == m.size()) {
      out.push_back(CharVector{k});
      return;
    }
    const std::int64_t par = ((m[i] % 2) + 2) % 2;
    for (std::int64_t x = -r; x <= r; ++x)
      if (((x % 2) + 2) % 2 == par) {
        k[i] = x;
        rec(i + 1);
      }
  };
  rec(0);
  return out;
}

// (K - K')/2 in M Z^V
bool same_class(const QuadraticForm& q, const CharVector& a, const CharVector& b) {
  IntVector d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = (a[i] - b[i]) / 2;
  for (const auto& y : linalg::multiply(q.inverse(), linalg::to_rational(d)))
    if (!y.is_integer()) return false;
  return true;
}

}  // namespace

TEST_CASE("classes and representatives against a brute-force box") {
  std::size_t graphs = 0;
  for (const auto& g : fixtures::corpus(3)) {
    ++graphs;
    QuadraticForm q(g);
    const auto classes = spinc_classes(q);
    const auto det = q.determinant() < 0 ? -q.determinant() : q.determinant();
    REQUIRE(classes.size() == static_cast<std::size_t>(det));

    std::int64_t r = 2;
    for (auto m : g.framings()) r = std::max(r, -m + 2);
    // oracle representatives: max K^2 then lexicographic, per class
    std::vector<std::optional<CharVector>> best(classes.size());
    for (const auto& k : box(g, r)) {
      const auto i = class_index(q, classes, k);
      CHECK(same_class(q, k, classes[i].representative));
      auto& b = best[i];
      if (!b || q.square(k) > q.square(*b) || (q.square(k) == q.square(*b) && k < *b)) b = k;
    }
    for (std::size_t i = 0; i < classes.size(); ++i) {
      REQUIRE(best[i].has_value());
      CHECK(*best[i] == classes[i].representative);
      CHECK(classes[i].index == i);
      for (std::size_t j = 0; j < i; ++j) CHECK_FALSE(same_class(q, classes[i].representative, classes[j].representative));
      if (i) CHECK(q.square(classes[i - 1].representative) >= q.square(classes[i].representative));
    }
  }
  CHECK(graphs > 50);
}

TEST_CASE("ellipsoid enumeration matches a box count") {
  for (const auto& g : {fixtures::a_chain(3), fixtures::star(-2, {{-2}, {-3}}), fixtures::one_vertex(-5)}) {
    QuadraticForm q(g);
    const auto classes = spinc_classes(q);
    const Rational bound(9);
    for (const auto& s : classes) {
      std::set<CharVector> seen;
      q.enumerate(s.representative, IntVector(q.size(), 0), bound, [&](const CharVector& k) {
        CHECK(q.is_characteristic(k));
        CHECK(-q.square(k) <= bound);
        seen.insert(k);
      });
      std::set<CharVector> oracle;
      for (const auto& k : box(g, 12))
        if (-q.square(k) <= bound && same_class(q, k, s.representative)) oracle.insert(k);
      CHECK(seen == oracle);
    }
  }
}

TEST_CASE("small examples") {
  QuadraticForm q1(fixtures::one_vertex(-1));
  REQUIRE(spinc_classes(q1).size() == 1);
  CHECK(spinc_classes(q1)[0].representative.values == IntVector{-1});

  QuadraticForm q2(fixtures::one_vertex(-2));
  const auto c2 = spinc_classes(q2);
  REQUIRE(c2.size() == 2);
  CHECK(c2[0].representative.values == IntVector{0});
  CHECK(c2[1].representative.values == IntVector{-2});

  CHECK(spinc_classes(fixtures::e8()).size() == 1);
  CHECK_THROWS_AS(char_square(fixtures::one_vertex(-2), CharVector{{1}}), InputError);
}

TEST_CASE("twist by the distinguished vertex") {
  // background: the A_3 chain, v0 attached to its first vertex
  const MarkedGraph mg{fixtures::a_chain(3), "v0", {0}};
  QuadraticForm q(mg.graph);
  const auto classes = spinc_classes(q);
  REQUIRE(classes.size() == 4);
  for (const auto& s : classes) {
    CHECK(twist(q, classes, s, mg, 0) == s);
    for (std::int64_t n = -2; n <= 2; ++n) {
      const auto t = twist(q, classes, s, mg, n);
      CHECK(twist(q, classes, t, mg, -n) == s);
      CharVector k = s.representative;
      k.values[0] += 2 * n;
      CHECK(same_class(q, k, t.representative));
    }
  }
  // adjacency e_1 generates H^2 of A_3 (Z/4), so n = 0..3 hit every class
  std::set<std::size_t> hit;
  for (std::int64_t n = 0; n < 4; ++n) hit.insert(twist(q, classes, classes[0], mg, n).index);
  CHECK(hit.size() == 4);
}
