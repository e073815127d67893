#include <random>

#include "doctest.h"
#include "dyson/recursions.hpp"

using namespace dyson;

namespace {

Rational q(const char* s) { return parse_rational(s); }

std::vector<Rational> delta1(int n) {
  std::vector<Rational> p(static_cast<std::size_t>(n) + 1, Rational(0));
  p[1] = 1;
  return p;
}

Rational random_rational(std::mt19937& rng, int lo, int hi) {
  Rational r(std::uniform_int_distribution<int>(lo, hi)(rng), std::uniform_int_distribution<int>(1, 6)(rng));
  r.canonicalize();
  return r;
}

}  // namespace

TEST_SUITE("recursions") {
  TEST_CASE("second recursion, single") {
    const auto g = second_recursion_single(delta1(5), 2, 5);
    CHECK(g == make_series({0, 1, 1, 4, 27, 248}));
    CHECK(second_recursion_single(delta1(8), 1, 8) == make_series({0, 1, 0, 0, 0, 0, 0, 0, 0}));
    CHECK(second_recursion_single({}, 3, 6) == RationalSeries(6));
  }

  TEST_CASE("p from the phi^3 reduction") {
    const auto p = p_from_reduction(reduce_single(phi3_spec(3, OperatorConvention::d_rho)));
    CHECK(p.provenance == Provenance::reduction);
    CHECK(p.p[0][1] == q("1/6"));
    CHECK(p.p[0][2] == q("5/216"));
    CHECK(p.p[0][3] == q("37/3888"));
  }

  TEST_CASE("second recursion, systems") {
    const auto single = second_recursion_single(delta1(6), -2, 6);
    const auto sys = second_recursion_system(PrimitiveSeries::single({1, 0, 0, 0, 0, 0}), {-2});
    CHECK(sys[0] == single);

    PrimitiveSeries pair;
    pair.residues = {"A", "B"};
    pair.truncation = 7;
    pair.p = {delta1(7), delta1(7)};
    pair.p[0][3] = pair.p[1][3] = q("2/3");
    const auto g = second_recursion_system(pair, {3, 3});
    CHECK(g[0] == g[1]);
  }

  TEST_CASE("degenerate system collapses") {
    const auto g = degenerate_system({1}, 40);
    CHECK(g[1][1] == 1);
    for (int n = 2; n <= 40; ++n) CHECK(g[1][n] == 0);
    CHECK(g[0][2] != 0);
  }

  TEST_CASE("first recursion") {
    const auto table = first_recursion({make_series({0, 1, 1, 4})}, {2}, 3);
    CHECK(table.gamma_k(0, 2) == make_series({0, 0, q("-1/2"), -2}));
    for (int k = 1; k <= 3; ++k)
      for (int j = 0; j < k; ++j) CHECK(table.gamma(0, k, j) == 0);
    const auto zero = first_recursion({RationalSeries(5)}, {2}, 5);
    for (int k = 1; k <= 5; ++k) CHECK(zero.gamma_k(0, k) == RationalSeries(5));
  }

  TEST_CASE("phi^3 fourth-order identity") {
    for (auto conv : {OperatorConvention::rg, OperatorConvention::d_rho}) {
      CHECK(phi3_fourth_order_check(solve_single(phi3_spec(8, conv))));
      CHECK(phi3_fourth_order_check(solve_single(phi3_spec(1, conv))));
      const std::vector<Rational> poles{1, 2, 4};
      const auto perturbed = TheorySpec::single(2, laurent_from_poles(-1, poles, 8), 8, conv);
      CHECK_FALSE(phi3_fourth_order_check(solve_single(perturbed)));
    }
  }

  TEST_CASE("solver, reduction and both recursions agree (rg)") {
    std::mt19937 rng(11);
    for (int s : {2, 3, -1, 1, -2}) {
      const int n = 7;
      TheorySpec spec;
      spec.truncation = n;
      ResidueSpec r{"G", s, {}};
      for (int k = 1; k <= 2; ++k) {
        std::vector<Rational> f;
        for (int j = 0; j < n + 2; ++j) f.push_back(random_rational(rng, -5, 5));
        r.primitives[k].push_back(Kernel{LaurentData(f), 0});
      }
      spec.residues.push_back(r);
      const auto table = solve_single(spec);
      const auto p = p_from_reduction(reduce_single(spec));
      const auto g1 = second_recursion_single(p.p[0], s, n);
      CHECK(g1 == table.gamma_k(0, 1));
      CHECK(first_recursion({g1}, {s}, n, {"G"}) == table);
    }
  }

  TEST_CASE("two-residue system agrees with the coupled recursions (rg)") {
    std::mt19937 rng(5);
    const int n = 6;
    TheorySpec spec;
    spec.truncation = n;
    const std::vector<int> s{2, -1};
    for (std::size_t i = 0; i < 2; ++i) {
      ResidueSpec r{i == 0 ? "A" : "B", s[i], {}};
      std::vector<Rational> f;
      for (int j = 0; j < n + 2; ++j) f.push_back(random_rational(rng, -4, 4));
      r.primitives[1].push_back(Kernel{LaurentData(f), 0});
      spec.residues.push_back(r);
    }
    const auto table = solve_system(spec);
    const auto p = p_from_reduction(reduce_system(spec));
    const auto g1 = second_recursion_system(p, s);
    CHECK(g1[0] == table.gamma_k(0, 1));
    CHECK(g1[1] == table.gamma_k(1, 1));
    CHECK(first_recursion(g1, s, n, {"A", "B"}) == table);
  }

  TEST_CASE("homogeneity: f_j -> lambda^{j+1} f_j scales gamma_{k,j} by lambda^{j-k}") {
    std::mt19937 rng(17);
    for (auto conv : {OperatorConvention::rg, OperatorConvention::d_rho}) {
      const int n = 6;
      std::vector<Rational> f;
      for (int j = 0; j < n + 2; ++j) f.push_back(random_rational(rng, -6, 6));
      const Rational lambda = q("-3/2");
      std::vector<Rational> scaled = f;
      Rational power(1);
      for (auto& c : scaled) {  // c = f_{j}, j = -1, 0, 1, ...
        c *= power;
        power *= lambda;
      }
      const auto a = solve_single(TheorySpec::single(3, LaurentData(f), n, conv));
      const auto b = solve_single(TheorySpec::single(3, LaurentData(scaled), n, conv));
      for (int k = 1; k <= n; ++k) {
        Rational factor(1);
        for (int j = k; j <= n; ++j) {
          CHECK(b.gamma(0, k, j) == factor * a.gamma(0, k, j));
          factor *= lambda;
        }
      }
    }
  }
}
