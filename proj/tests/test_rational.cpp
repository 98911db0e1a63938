#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "plumbo/linalg.hpp"
#include "plumbo/rational.hpp"

using plumbo::Rational;
using namespace plumbo;

TEST_CASE("rational normal form") {
  CHECK(Rational(6, -4) == Rational(-3, 2));
  CHECK(Rational(6, -4).den() == 2);
  CHECK(Rational(0, 5) == Rational(0));
  CHECK(Rational(-7, 2).floor() == -4);
  CHECK(Rational(7, 2).floor() == 3);
  CHECK(Rational(-7, 2).ceil() == -3);
  CHECK(Rational(-7, 4).frac() == Rational(1, 4));
  CHECK(Rational::parse("-3/12") == Rational(-1, 4));
  CHECK(Rational(-1, 4).str() == "-1/4");
  CHECK_THROWS(Rational(1, 0));
  CHECK_THROWS(Rational(1, 2).to_integer());
}

TEST_CASE("rational field laws on random values") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::int64_t> num(-1000, 1000), den(1, 60);
  for (int it = 0; it < 2000; ++it) {
    const Rational a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
    CHECK((a + b) - b == a);
    CHECK(a * (b + c) == a * b + a * c);
    if (b != Rational(0)) CHECK((a / b) * b == a);
    // cross-multiplication oracle for the order
    const bool less = static_cast<__int128>(a.num()) * b.den() < static_cast<__int128>(b.num()) * a.den();
    CHECK((a < b) == less);
  }
}

TEST_CASE("rational overflow is reported") {
  const Rational big(INT64_MAX / 2);
  CHECK_THROWS_AS(big * big, std::overflow_error);
}

TEST_CASE("determinant and inverse") {
  // A_n chain of -2's: det = (-1)^n (n+1)
  for (std::size_t n = 1; n <= 6; ++n) {
    IntMatrix m(n, IntVector(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
      m[i][i] = -2;
      if (i + 1 < n) m[i][i + 1] = m[i + 1][i] = 1;
    }
    const std::int64_t sign = n % 2 ? -1 : 1;
    CHECK(linalg::determinant(m) == sign * static_cast<std::int64_t>(n + 1));
    CHECK(linalg::is_negative_definite(m));
    const auto inv = linalg::inverse(m);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Rational s;
        for (std::size_t k = 0; k < n; ++k) s += Rational(m[i][k]) * inv[k][j];
        CHECK(s == Rational(i == j ? 1 : 0));
      }
  }
  CHECK_FALSE(linalg::is_negative_definite(IntMatrix{{-1, 1}, {1, -1}}));
  CHECK_THROWS(linalg::inverse(IntMatrix{{-1, 1}, {1, -1}}));
}
