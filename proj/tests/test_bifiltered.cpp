#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "plumbo/bifiltered.hpp"

using namespace plumbo;

namespace {

// Staircase of T(2, 2g+1): z_j at A = g - j, gradings -j, dz_odd = U z_{j-1} + z_{j+1}.
BifilteredComplex torus(std::int64_t g) {
  BifilteredComplex c;
  for (std::int64_t j = 0; j <= 2 * g; ++j)
    c.add_generator({"z" + std::to_string(j), Rational(-j), j % 2, Rational(g - j)});
  for (std::int64_t j = 1; j < 2 * g; j += 2) {
    c.toggle(j, j - 1, 1);
    c.toggle(j, j + 1, 0);
  }
  return c;
}

// V_s from the Alexander polynomial: t_s = sum_{j>=1} j a_{|s|+j}, V_{-s} = V_s + s.
std::int64_t v_oracle(std::int64_t g, std::int64_t s) {
  auto a = [&](std::int64_t k) -> std::int64_t {
    if (k > g) return 0;
    return (g - k) % 2 == 0 ? 1 : -1;
  };
  const std::int64_t m = s < 0 ? -s : s;
  std::int64_t t = 0;
  for (std::int64_t j = 1; m + j <= g; ++j) t += j * a(m + j);
  return s < 0 ? t + m : t;
}

}  // namespace

TEST_CASE("torus knot staircases: A_i against torsion coefficients") {
  for (std::int64_t g = 0; g <= 4; ++g) {
    const auto c = torus(g);
    c.validate();
    c.validate_filtration();
    CHECK(is_minimal(c));
    CHECK(homology(sub_complex(c, SubKind::B)).str() == "T_0");
    for (std::int64_t i = -g - 2; i <= g + 2; ++i) {
      const Rational ri(i);
      const auto v = v_oracle(g, i), h = v_oracle(g, -i);
      const auto a = sub_complex(c, SubKind::A, ri);
      a.validate();
      const auto ha = homology(a);
      REQUIRE(ha.is_free_rank_one());
      CHECK(ha.free[0] == Rational(-2 * v));
      const auto b = sub_complex(c, SubKind::B), cc = sub_complex(c, SubKind::C, ri);
      cc.validate();
      CHECK(induced_power(a, b, map_v(c, ri)) == v);
      CHECK(induced_power(a, cc, map_h(c, ri)) == h);
      const auto a1 = sub_complex(c, SubKind::A, ri + Rational(1));
      // psi is an isomorphism or U on homology
      CHECK(induced_power(a, a1, map_psi(c, ri)) == v - v_oracle(g, i + 1));
      CHECK(induced_power(a1, a, map_phi(c, ri)) == 1 - v + v_oracle(g, i + 1));
    }
  }
}

TEST_CASE("wrong residue class is rejected") {
  BifilteredComplex c;
  c.add_generator({"x", Rational(0), 0, Rational(1, 2)});
  CHECK_THROWS_AS(sub_complex(c, SubKind::A, Rational(0)), InputError);
  CHECK_NOTHROW(sub_complex(c, SubKind::A, Rational(1, 2)));
}

TEST_CASE("tensor products") {
  const auto t = torus(1), u = torus(0);
  const auto tu = tensor(t, u);
  tu.validate();
  CHECK(tu.size() == 3);
  for (std::int64_t i = -2; i <= 2; ++i)
    CHECK(homology(sub_complex(tu, SubKind::A, Rational(i))) == homology(sub_complex(t, SubKind::A, Rational(i))));

  // T(2,3) # T(2,3): A_0 carries an extra F[U]/U
  const auto tt = tensor(t, t);
  tt.validate();
  tt.validate_filtration();
  CHECK(is_minimal(tt));
  CHECK(minimal_model(tt).size() == 9);
  CHECK(homology(sub_complex(tt, SubKind::B)).str() == "T_0");
  CHECK(homology(sub_complex(tt, SubKind::A, Rational(0))).str() == "T_-2 + F[U]/U^1_-2");
  CHECK(homology(sub_complex(tt, SubKind::A, Rational(1))).str() == "T_-2");
  CHECK(homology(sub_complex(tt, SubKind::A, Rational(2))).str() == "T_0");
}

TEST_CASE("minimal model cancels filtered-acyclic pieces") {
  auto c = torus(1);
  // acyclic pair p -> q at A = 0, tangled with the staircase by a basis change
  const auto p = c.add_generator({"p", Rational(-1), 1, Rational(0)});
  const auto q = c.add_generator({"q", Rational(-2), 0, Rational(0)});
  c.toggle(p, q, 0);
  // b' = b + p: d b' = U a + c + q
  c.toggle(1, q, 0);
  // second layer: d s = r + p, d r = q
  const auto r = c.add_generator({"r", Rational(-1), 1, Rational(0)});
  const auto s = c.add_generator({"s", Rational(0), 2, Rational(0)});
  c.toggle(s, r, 0);
  c.toggle(s, p, 0);
  c.toggle(r, q, 0);
  c.validate();
  c.validate_filtration();
  CHECK_FALSE(is_minimal(c));
  const auto m = minimal_model(c);
  m.validate();
  m.validate_filtration();
  CHECK(is_minimal(m));
  CHECK(m.size() == 3);
  for (std::int64_t i = -3; i <= 3; ++i) {
    CHECK(homology(sub_complex(m, SubKind::A, Rational(i))) == homology(sub_complex(c, SubKind::A, Rational(i))));
    CHECK(homology(sub_complex(m, SubKind::C, Rational(i))) == homology(sub_complex(c, SubKind::C, Rational(i))));
  }
  CHECK(homology(m) == homology(c));
}
