#include <random>

#include "doctest.h"
#include "dyson/series.hpp"

using namespace dyson;

namespace {

Rational q(const char* s) { return parse_rational(s); }

RationalSeries random_series(std::mt19937& rng, int n) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  RationalSeries out(n);
  for (int i = 0; i <= n; ++i) out[i] = Rational(num(rng), den(rng));
  for (int i = 0; i <= n; ++i) out[i].canonicalize();
  return out;
}

}  // namespace

TEST_SUITE("series") {
  TEST_CASE("rational parsing and printing") {
    CHECK(to_string(q("-4/6")) == "-2/3");
    CHECK(to_string(q("12")) == "12");
    CHECK(to_string(q(" 3/9 ")) == "1/3");
    CHECK_THROWS_AS(q("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(q("1/-3"), std::invalid_argument);
    CHECK_THROWS_AS(q("abc"), std::invalid_argument);
    CHECK_THROWS_AS(q(""), std::invalid_argument);
  }

  TEST_CASE("addition and multiplication") {
    CHECK(make_series({1, 1}) + make_series({1, -1}) == make_series({2, 0}));
    CHECK(make_series({0, 1, 1}) + make_series({0, 0, 1}) == make_series({0, 1, 2}));
    CHECK(make_series({1, 1, 0}) * make_series({1, -1, 0}) == make_series({1, 0, -1}));
    CHECK(make_series({0, 1, 0}) * make_series({0, 1, 0}) == make_series({0, 0, 1}));
    // Truncation travels with the data: N = 1 wins.
    CHECK(pow(make_series({1, 1}), 2) == make_series({1, 2}));
    CHECK((make_series({1, 2, 3}) * make_series({1, 1})).truncation() == 1);
  }

  TEST_CASE("powers and reciprocals") {
    CHECK(pow(make_series({1, 1, 0, 0}), -1) == make_series({1, -1, 1, -1}));
    CHECK(pow(make_series({1, -1, 0}), -2) == make_series({1, 2, 3}));
    CHECK(pow(make_series({5, 3, 1}), 0) == RationalSeries::one(2));
    CHECK_THROWS_AS(pow(make_series({0, 1}), -1), ZeroConstantTerm);
  }

  TEST_CASE("x d/dx") {
    CHECK(x_ddx(make_series({0, 0, 1})) == make_series({0, 0, 2}));
    CHECK(x_ddx(make_series({7, 0})) == make_series({0, 0}));
    CHECK(x_ddx(make_series({0, 1, 0, 4})) == make_series({0, 1, 0, 12}));
  }

  TEST_CASE("ring axioms on random series") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
      const auto a = random_series(rng, 6), b = random_series(rng, 6), c = random_series(rng, 6);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      CHECK(a + b == b + a);
      if (sgn(a[0]) != 0) CHECK(pow(a, -1) * a == RationalSeries::one(6));
      if (sgn(a[0]) != 0) CHECK(pow(a, -3) * pow(a, 3) == RationalSeries::one(6));
    }
  }

  TEST_CASE("Laurent data") {
    const auto g1 = laurent_geometric(1, 2), g0 = laurent_geometric(0, 3), g6 = laurent_geometric(q("-1/6"), 1);
    CHECK(g1.coeffs().size() == 4);
    for (const auto& c : g1.coeffs()) CHECK(c == 1);
    for (const auto& c : g0.coeffs()) CHECK(c == 0);
    for (const auto& c : g6.coeffs()) CHECK(c == q("-1/6"));

    const std::vector<Rational> poles{1, 2, 3};
    const auto f = laurent_from_poles(-1, poles, 6);
    CHECK(f.order() == 6);
    CHECK(f.residue() == q("-1/6"));
    CHECK(f.at(0) == q("-11/36"));
    CHECK_THROWS_AS(f.at(7), InsufficientLaurentOrder);

    const std::vector<Rational> one{1};
    const auto unit_pole = laurent_from_poles(1, one, 5);
    for (const auto& c : unit_pole.coeffs()) CHECK(c == 1);
    const std::vector<Rational> bad{1, 0};
    CHECK_THROWS_AS(laurent_from_poles(1, bad, 3), PoleAtOrigin);
  }

  TEST_CASE("pole expansion times its denominator is the scale") {
    const std::vector<Rational> poles{q("1/2"), q("-3"), q("5/4")};
    const int m = 6;
    const auto f = laurent_from_poles(q("7/3"), poles, m);
    // rho F(rho) as a series, times prod (p - rho).
    RationalSeries acc(std::vector<Rational>(f.coeffs().begin(), f.coeffs().end()));
    for (const auto& p : poles) acc *= make_series({p, -1});
    for (int j = 0; j <= acc.truncation(); ++j) CHECK(acc[j] == (j == 0 ? q("7/3") : Rational(0)));
  }

  TEST_CASE("bivariate series stays triangular") {
    BivariateSeries b(3);
    b.set(2, 2, 5);
    CHECK(b.at(2, 2) == 5);
    CHECK_THROWS_AS(b.set(1, 2, 1), std::out_of_range);
    const auto sq = b * b;
    CHECK(sq.at(3, 3) == 0);
    CHECK(b.column(2) == make_series({0, 0, 5, 0}));
  }
}
