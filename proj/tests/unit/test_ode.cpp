#include <cmath>

#include "doctest.h"
#include "dyson/error.hpp"
#include "dyson/ode.hpp"

using namespace dyson;
using namespace dyson::ode;

TEST_SUITE("ode") {
  TEST_CASE("slopes") {
    const auto s2 = OdeSpec::toy(2);
    CHECK(rhs_single(0.75, 0.5, s2) == doctest::Approx(0.0));
    const auto s1 = OdeSpec::toy(1);
    for (double x : {0.1, 0.4, 0.9}) CHECK(rhs_single(x, x, s1) == doctest::Approx(1.0));
    CHECK(rhs_single(0.5, 1e-6, s2) < -1e4);
    CHECK_THROWS_AS(rhs_single(0.5, 0.0, s2), SingularPoint);
    CHECK_THROWS_AS(rhs_single(0.0, 0.5, s2), SingularPoint);
  }

  TEST_CASE("phi^4 system slopes") {
    const auto spec = OdeSpec::phi4({0.0}, {0.0});
    const auto d = rhs_system(0.5, {0.3, 0.3}, spec);
    // Same ordinates, opposite quadratic signs.
    CHECK(d[0] == doctest::Approx((0.3 - 0.09) / (0.9 * 0.5)));
    CHECK(d[1] == doctest::Approx((0.3 + 0.09) / (0.9 * 0.5)));
    CHECK_THROWS_AS(rhs_system(0.5, {0.4, -0.2}, spec), SingularPoint);
  }

  TEST_CASE("s = 1 exact solution") {
    const auto t = integrate(OdeSpec::toy(1), 0.1, 0.1, 1.0);
    CHECK(t.termination == Termination::reached_right_edge);
    CHECK(std::abs(t.y.back()[0] - 1.0) < 1e-6);
    for (std::size_t i = 0; i < t.x.size(); ++i) CHECK(std::abs(t.y[i][0] - t.x[i]) < 1e-6);
    for (std::size_t i = 1; i < t.x.size(); ++i) CHECK(t.x[i] > t.x[i - 1]);
  }

  TEST_CASE("trajectories below the nullcline die") {
    auto spec = OdeSpec::toy(2);
    spec.g_max = 10;
    const auto t = integrate(spec, 0.5, 0.1, 1.0);
    CHECK(t.termination == Termination::died);
    CHECK(t.death_x > 0.5);
    CHECK(t.death_x < 1.0);
  }

  TEST_CASE("defining relation along trajectories") {
    for (int s : {1, 2, 3, -1, -2}) {
      auto spec = OdeSpec::toy(s);
      spec.g_max = 10;
      for (double g0 : {0.3, 0.6, 1.2}) {
        const auto t = integrate(spec, 0.2, g0, 1.0);
        INFO("s = ", s, ", g0 = ", g0, ", end = ", to_string(t.termination));
        CHECK(max_midpoint_residual(t, spec) < 1e-6);
      }
    }
  }

  TEST_CASE("Lambert family") {
    CHECK(lambert_w0(0.0) == 0.0);
    CHECK(lambert_w0(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(lambert_w0(-1.0), DomainError);
    const auto spec = OdeSpec::toy(1);
    for (double c : {1.0, 5.0, -0.2}) {
      double worst = 0;
      for (int i = 0; i < 20; ++i) {
        const double x = 0.1 + 0.045 * i;
        const double g = lambert_family(x, c);
        worst = std::max(worst, std::abs(lambert_family_derivative(x, c) - rhs_single(x, g, spec)));
      }
      CHECK(worst < 1e-8);
    }
  }

  TEST_CASE("nullcline") {
    CHECK(nullcline(OdeSpec::toy(2), 0.75) == doctest::Approx(0.5));
    CHECK(nullcline(OdeSpec::toy(2), 0.0) == 0.0);
    // s < 0: the discriminant vanishes at x = 1/4 and the flat ordinate is +1/2.
    CHECK(nullcline(OdeSpec::toy(-2), 0.25) == doctest::Approx(0.5));
    CHECK_THROWS_AS(nullcline(OdeSpec::toy(-2), 0.3), DomainError);

    for (int s : {2, 3, 1}) {
      const auto spec = OdeSpec::toy(s);
      for (int i = 1; i <= 50; ++i) {
        const double x = 0.02 * i;
        const double y = nullcline(spec, x);
        CHECK(rhs_single(x, y * 0.99, spec) < 0);
        CHECK(rhs_single(x, y * 1.01, spec) > 0);
      }
    }
  }

  TEST_CASE("asymptotic series") {
    const auto g = asymptotic_series(OdeSpec::toy(2), 5);
    CHECK(g == std::vector<double>{1, 1, 4, 27, 248});
    CHECK(eval_series({1, 1}, 0.1) == doctest::Approx(0.11));
  }

  TEST_CASE("separatrix") {
    const double x0 = 0.01;
    const auto r = separatrix_search(OdeSpec::toy(2), x0, 1.0);
    const double seed = x0 + x0 * x0 + 4 * std::pow(x0, 3) + 27 * std::pow(x0, 4);
    CHECK(std::abs(r.g0 - seed) < 10 * std::pow(x0, 5) * 248);

    // The died/escaped boundary is the Lambert trajectory dying at x_probe, which
    // sits x0 e^(1/x_probe - 1/x0 - 1) below g = x: about 1e-10 at x0 = 0.05.
    const auto exact = separatrix_search(OdeSpec::toy(1), 0.05, 1.0);
    CHECK(std::abs(exact.g0 - 0.05) < 1e-8);

    const auto spec = OdeSpec::toy(2);
    const double below = nullcline(spec, 0.5);
    CHECK_THROWS_AS(separatrix_search(spec, 0.5, 1.0, 0.2 * below, 0.5 * below), NoBracket);
  }

  TEST_CASE("QED polynomial root") {
    const std::vector<double> four{0, 1.0 / 3, 0.25, -0.0312 + 0.06037, -0.6755 + 0.05074};
    CHECK(std::abs(qed_p_root(four) - 0.992) < 1e-3);
    CHECK_THROWS_AS(qed_p_root({0, 1.0 / 3, 0.25}, 0.0, 10.0), NoSignChange);
    CHECK_THROWS_AS(qed_p_root({0, 1}), NoSignChange);
  }

  TEST_CASE("field sampling") {
    auto spec = OdeSpec::toy(2);
    const Grid grid{30, 30, 0.0, 1.0, 0.0, 1.0};
    const auto field = emit_field_serial(spec, grid);
    REQUIRE(field.size() == 900);
    for (int i = 0; i < grid.nx; ++i) CHECK(field[static_cast<std::size_t>(i)].masked);
    for (const auto& f : field)
      if (!f.masked) CHECK(std::hypot(f.dx, f.dg) == doctest::Approx(1.0));

    // A sign change of the slope between two rows brackets the nullcline.
    const double cell = 1.0 / 29;
    for (int i = 1; i < grid.nx; ++i) {
      for (int j = 1; j + 1 < grid.ny; ++j) {
        const auto& a = field[static_cast<std::size_t>(j * grid.nx + i)];
        const auto& b = field[static_cast<std::size_t>((j + 1) * grid.nx + i)];
        if (a.masked || b.masked || (a.slope < 0) == (b.slope < 0)) continue;
        CHECK(std::abs(nullcline(spec, a.x) - a.g) <= cell + 1e-12);
      }
    }

    const auto parallel = emit_field_parallel(spec, grid);
    REQUIRE(parallel.size() == field.size());
    for (std::size_t k = 0; k < field.size(); ++k) {
      CHECK(parallel[k].slope == field[k].slope);
      CHECK(parallel[k].masked == field[k].masked);
    }
    CHECK(field_dat(field) == field_dat(parallel));
  }

  TEST_CASE("renderers") {
    auto neg = OdeSpec::toy(-2);
    const Grid grid{20, 20, 0.0, 1.0, -1.0, 1.0};
    const auto field = emit_field(neg, grid);
    const auto svg = field_svg(field, grid, "s = -2");
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg == field_svg(field, grid, "s = -2"));
    CHECK(field_dat(field).find("masked") != std::string::npos);

    const auto slice = emit_system_slice(OdeSpec::phi4({0, 1}, {0, 0, 1}), Grid{8, 8, 0.1, 1.0, 0.1, 1.0}, 0.5);
    CHECK(slice.size() == 64);
    const auto t = integrate(OdeSpec::toy(1), 0.1, 0.1, 0.5);
    CHECK(trajectory_csv(t).rfind("x,", 0) == 0);
  }
}
