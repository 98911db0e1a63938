#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <optional>

#include "plumbo/fixtures.hpp"
#include "plumbo/rationality.hpp"

using namespace plumbo;

namespace {

// Oracle: smallest Z >= E (sum order) with Z.E_i <= 0, by trying every
// vector with entries in [1, bound].
std::optional<IntVector> brute_artin(const PlumbingGraph& g, std::int64_t bound) {
  const auto m = g.intersection_matrix();
  const std::size_t n = g.size();
  std::optional<IntVector> best;
  IntVector z(n, 1);
  for (;;) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      std::int64_t s = 0;
      for (std::size_t j = 0; j < n; ++j) s += m[i][j] * z[j];
      ok = s <= 0;
    }
    if (ok) {
      if (!best) best = z;
      else
        for (std::size_t i = 0; i < n; ++i) (*best)[i] = std::min((*best)[i], z[i]);
    }
    std::size_t i = 0;
    while (i < n && z[i] == bound) z[i++] = 1;
    if (i == n) break;
    ++z[i];
  }
  return best;
}

// Arithmetic genus 1 + (Z^2 + Z.K)/2 with K.E_i = -m_i - 2.
std::int64_t genus(const PlumbingGraph& g, const IntVector& z) {
  const auto m = g.intersection_matrix();
  std::int64_t z2 = 0, zk = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = 0; j < z.size(); ++j) z2 += z[i] * m[i][j] * z[j];
    zk += z[i] * (-m[i][i] - 2);
  }
  return 1 + (z2 + zk) / 2;
}

}  // namespace

TEST_CASE("Artin cycle and rationality against exhaustive search") {
  for (const auto& g : fixtures::corpus()) {
    if (g.components().size() != 1) continue;
    const auto z = brute_artin(g, 4);
    REQUIRE(z.has_value());
    CHECK(artin_cycle(g).coefficients == *z);
    const bool rational = genus(g, *z) == 0;
    CHECK(is_rational(g, RationalityMethod::laufer).rational == rational);
    CHECK(is_rational(g, RationalityMethod::genus).rational == rational);
  }
}

TEST_CASE("classical examples") {
  const auto e8 = fixtures::e8();
  // fundamental cycle of E8 is the highest root, coefficients up to 6
  const auto z = brute_artin(e8, 6);
  REQUIRE(z.has_value());
  CHECK(artin_cycle(e8).coefficients == *z);
  CHECK(*std::max_element(z->begin(), z->end()) == 6);
  CHECK(is_rational(e8).rational);
  for (std::size_t n = 1; n <= 4; ++n) CHECK(is_rational(fixtures::a_chain(n)).rational);
  CHECK_FALSE(is_rational(fixtures::sigma237()).rational);
  CHECK(is_almost_rational(fixtures::sigma237()).has_value());
}

TEST_CASE("one-vertex (-1) Laufer trace") {
  const auto r = is_rational(fixtures::one_vertex(-1));
  CHECK(r.rational);
  REQUIRE(r.trace.size() == 1);
  CHECK(r.trace[0] == IntVector{1});
}

TEST_CASE("type-2 fixture") {
  const auto g = fixtures::type2();
  CHECK(intersection_form(g).determinant == -1);
  CHECK_FALSE(is_rational(g).rational);
  CHECK_FALSE(is_almost_rational(g).has_value());
  const auto rest = mark_vertex(g, g.index_of("w"));
  CHECK(rest.graph.components().size() == 2);
  CHECK(is_rational(rest.graph).rational);
}

TEST_CASE("disconnected graphs: conjunction over components") {
  const PlumbingGraph g({{"a", -2}, {"b", -2}, {"c", -1}, {"d", -2}, {"e", -3}, {"f", -7}},
                        {{"c", "d"}, {"c", "e"}, {"c", "f"}});
  CHECK_FALSE(is_rational(g).rational);
  CHECK(is_rational(fixtures::trefoil_sum_mark().graph).rational);
  CHECK_THROWS_AS(artin_cycle(g), InputError);
}
