// Acceptance suite: one PASS/FAIL line per criterion, with its wall time
// against the allowed budget. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dyson/dse.hpp"
#include "dyson/error.hpp"
#include "dyson/hopf.hpp"
#include "dyson/ode.hpp"
#include "dyson/radius.hpp"
#include "dyson/recursions.hpp"
#include "dyson/reduce.hpp"

using namespace dyson;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

/// Collects failed sub-checks; the first few are reported.
struct Checks {
  int failures = 0;
  std::ostringstream notes;
  void expect(bool cond, const std::string& what) {
    if (cond) return;
    if (failures < 4) notes << (failures ? "; " : "") << what;
    ++failures;
  }
  Outcome done(const std::string& summary) const {
    if (failures == 0) return {true, summary};
    std::ostringstream s;
    s << failures << " failed: " << notes.str();
    return {false, s.str()};
  }
};

Rational pow_int(const Rational& a, int e) {
  Rational r(1);
  for (int i = 0; i < e; ++i) r *= a;
  return r;
}

Rational random_rational(std::mt19937& rng, int lo, int hi, int max_den) {
  Rational r(std::uniform_int_distribution<int>(lo, hi)(rng), std::uniform_int_distribution<int>(1, max_den)(rng));
  r.canonicalize();
  return r;
}

std::vector<Rational> delta(int n, std::initializer_list<int> support) {
  std::vector<Rational> p(static_cast<std::size_t>(n) + 1, Rational(0));
  for (int k : support) p[static_cast<std::size_t>(k)] = 1;
  return p;
}

Outcome phi3_reduction() {
  const auto red = reduce_single(phi3_spec(6, OperatorConvention::d_rho));
  const auto& r = red.residues[0].r;
  const auto& ri = red.residues[0].r_ki;
  const Rational six(6);
  Checks c;
  c.expect(r[1] == Rational(-1, 6), "r1");
  c.expect(r[2] == Rational(-5) / pow_int(six, 3), "r2");
  c.expect(r[3] == Rational(-14) / pow_int(six, 5), "r3");
  c.expect(ri[3][1] == Rational(-5) / pow_int(six, 4), "r31");
  c.expect(r[4] == Rational(563) / pow_int(six, 7), "r4");
  c.expect(ri[4][1] == Rational(-173) / pow_int(six, 6), "r41");
  c.expect(ri[4][2] == Rational(-35) / pow_int(six, 6), "r42");
  c.expect(r[5] == Rational(13030) / pow_int(six, 9), "r5");
  c.expect(r[6] == Rational(-194178) / pow_int(six, 11), "r6");
  return c.done("9 exact rationals match (d_rho operator convention)");
}

Outcome symbolic_identities() {
  std::mt19937 rng(20240611);
  Checks c;
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<Rational> f(7, Rational(0));  // f_{-1}, f_0, ..., f_5
    for (int j = 0; j < 4; ++j) {
      do f[static_cast<std::size_t>(j)] = random_rational(rng, -9, 9, 7);
      while (j == 0 && sgn(f[0]) == 0);
    }
    const Rational a = f[0], f0 = f[1], f1 = f[2], f2 = f[3];
    const auto red = reduce_single(TheorySpec::single(2, LaurentData(f), 4, OperatorConvention::d_rho));
    const auto& r = red.residues[0].r;
    const auto& ri = red.residues[0].r_ki;
    const Rational a2 = a * a, a3 = a2 * a, a4 = a3 * a;
    const std::string t = "tuple " + std::to_string(trial) + ": ";
    c.expect(r[2] == a2 - a * f0, t + "r2");
    c.expect(r[3] == 2 * a3 + a2 * (-4 * f0 + f1) + a * f0 * f0, t + "r3");
    c.expect(ri[3][1] == -a3 + a2 * f0, t + "r31");
    c.expect(r[4] == 2 * a4 + a3 * (-12 * f0 + 6 * f1 - f2) + a2 * (9 * f0 * f0 - 3 * f0 * f1) - a * f0 * f0 * f0,
             t + "r4");
    c.expect(ri[4][1] == -a4 + a3 * (6 * f0 - 2 * f1) - 3 * a2 * f0 * f0, t + "r41");
    c.expect(ri[4][2] == Rational(7, 6) * a4 - Rational(7, 6) * a3 * f0, t + "r42");
  }
  return c.done("5 random tuples, 6 polynomials each (d_rho operator convention)");
}

Outcome end_to_end() {
  std::mt19937 rng(77);
  Checks c;
  int accepted = 0, drawn = 0;
  const int n = 12;
  while (accepted < 10 && drawn < 200) {
    ++drawn;
    std::vector<Rational> poles;
    const int count = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < count; ++i) poles.push_back(random_rational(rng, 1, 7, 3));
    const Rational scale = -random_rational(rng, 1, 5, 5);
    const int s = std::vector<int>{1, 2, 3, -1, -2}[rng() % 5];
    const auto spec = TheorySpec::single(s, laurent_from_poles(scale, poles, n + 1), n);
    const auto p = p_from_reduction(reduce_single(spec));
    bool nonneg = true;
    for (int k = 1; k <= n; ++k) nonneg = nonneg && sgn(p.p[0][static_cast<std::size_t>(k)]) >= 0;
    if (!nonneg) continue;
    ++accepted;
    const auto table = solve_single(spec);
    const auto g1 = second_recursion_single(p.p[0], s, n);
    const std::string t = "spec " + std::to_string(accepted) + " (s=" + std::to_string(s) + "): ";
    c.expect(g1 == table.gamma_k(0, 1), t + "gamma_1");
    c.expect(first_recursion({g1}, {s}, n, {"G"}) == table, t + "full table");
  }
  c.expect(accepted == 10, "only " + std::to_string(accepted) + " nonneg specs drawn");
  return c.done("10 nonneg specs at N = 12, gamma_1 and full tables identical (" + std::to_string(drawn) +
                " drawn)");
}

Outcome radius_theorem() {
  const int n = 80;
  Checks c;
  std::ostringstream summary;
  auto check_single = [&](const std::string& label, const std::vector<Rational>& p_from_zero, int s) {
    const auto p = PrimitiveSeries::single(std::vector<Rational>(p_from_zero.begin() + 1, p_from_zero.end()));
    const auto theory = theoretical_radius(p, {s});
    const auto est = estimate_radius(borel_coefficients(second_recursion_single(p_from_zero, s, n)));
    const double dev = std::abs(est.radius - theory.value) / theory.value;
    summary << label << " " << est.radius << " vs " << theory.value << "; ";
    c.expect(!theory.infinite && !est.infinite && dev <= 0.05, label + " deviation " + std::to_string(dev));
  };
  check_single("s=2,d1", delta(n, {1}), 2);
  std::vector<Rational> inv(static_cast<std::size_t>(n) + 1, Rational(0));
  Rational f(1);
  for (int k = 1; k <= n; ++k) inv[static_cast<std::size_t>(k)] = f /= k;
  check_single("s=2,1/k!", inv, 2);
  check_single("s=3,d1+d2", delta(n, {1, 2}), 3);

  PrimitiveSeries pair;
  pair.residues = {"A", "B"};
  pair.truncation = n;
  pair.p = {delta(n, {1}), delta(n, {1, 3})};
  const std::vector<int> s{2, 1};
  const auto theory = theoretical_radius(pair, s);
  const auto g = second_recursion_system(pair, s);
  for (std::size_t r = 0; r < 2; ++r) {
    const auto est = estimate_radius(borel_coefficients(g[r]));
    const double dev = std::abs(est.radius - theory.value) / theory.value;
    summary << "system/" << pair.residues[r] << " " << est.radius << " vs " << theory.value << "; ";
    c.expect(!est.infinite && dev <= 0.05, "system residue " + pair.residues[r] + " deviation " + std::to_string(dev));
  }

  const auto boundary = theoretical_radius(PrimitiveSeries::single({1}), {1});
  c.expect(boundary.infinite && boundary.boundary_case, "boundary case not flagged infinite");
  const auto b_est = estimate_radius(borel_coefficients(second_recursion_single(delta(n, {1}), 1, n)));
  c.expect(b_est.infinite, "boundary estimate finite");
  summary << "boundary infinite";
  return c.done(summary.str());
}

Outcome degenerate() {
  const auto g = degenerate_system({1}, 40);
  Checks c;
  for (int k = 2; k <= 40; ++k) c.expect(g[1][k] == 0, "a2_" + std::to_string(k) + " != 0");
  c.expect(g[1][1] != 0, "a2_1 vanished");
  return c.done("a2_n = 0 for 2 <= n <= 40");
}

Outcome hopf_axioms() {
  const auto forests = hopf::enumerate_forests(6, {1, 2});
  const auto report = hopf::check_axioms_parallel(forests);
  Checks c;
  c.expect(report.coassociativity_failures == 0, "coassociativity");
  c.expect(report.counit_failures == 0, "counit");
  c.expect(report.antipode_failures == 0, "antipode");
  c.expect(report.involution_failures == 0, "S o S");
  c.expect(report.cocycle_failures == 0, "cocycle");
  c.expect(report.grading_failures == 0, "grading");
  for (int s : {1, 2, 3})
    for (int k = 0; k <= 5; ++k)
      c.expect(hopf::check_breaking_apart(s, k), "breaking apart s=" + std::to_string(s) + " k=" + std::to_string(k));
  return c.done(std::to_string(forests.size()) + " forests over decorations {1,2}; breaking apart for s in {1,2,3}, k <= 5");
}

Outcome ode_oracles() {
  using namespace dyson::ode;
  Checks c;
  double worst_exact = 0;
  const auto exact = integrate(OdeSpec::toy(1), 0.1, 0.1, 1.0);
  c.expect(exact.termination == Termination::reached_right_edge, "s=1 did not reach x=1");
  for (std::size_t i = 0; i < exact.x.size(); ++i) worst_exact = std::max(worst_exact, std::abs(exact.y[i][0] - exact.x[i]));
  c.expect(worst_exact < 1e-6, "s=1 error " + std::to_string(worst_exact));

  double worst_lambert = 0;
  const auto s1 = OdeSpec::toy(1);
  for (double cc : {1.0, 5.0, -0.2})
    for (int i = 0; i < 20; ++i) {
      const double x = 0.1 + 0.045 * i;
      worst_lambert = std::max(worst_lambert, std::abs(lambert_family_derivative(x, cc) -
                                                       rhs_single(x, lambert_family(x, cc), s1)));
    }
  c.expect(worst_lambert < 1e-8, "Lambert residual " + std::to_string(worst_lambert));

  double worst_residual = 0;
  int trajectories = 0;
  for (int s : {1, 2, 3, -1, -2}) {
    auto spec = OdeSpec::toy(s);
    spec.g_max = 10;
    for (double x0 : {0.05, 0.2, 0.5})
      for (double g0 : {0.05, 0.3, 0.6, 1.2, 3.0}) {
        worst_residual = std::max(worst_residual, max_midpoint_residual(integrate(spec, x0, g0, 1.0), spec));
        ++trajectories;
      }
  }
  c.expect(worst_residual < 1e-6, "defining residual " + std::to_string(worst_residual));

  int flips = 0;
  for (int s : {1, 2, 3}) {
    const auto spec = OdeSpec::toy(s);
    for (int i = 1; i <= 50; ++i) {
      const double x = 0.02 * i;
      const double y = nullcline(spec, x);
      const bool ok = rhs_single(x, y * 0.99, spec) < 0 && rhs_single(x, y * 1.01, spec) > 0;
      c.expect(ok, "no sign flip at x=" + std::to_string(x));
      flips += ok;
    }
  }
  std::ostringstream s;
  s << "s=1 error " << worst_exact << ", Lambert " << worst_lambert << ", residual " << worst_residual << " over "
    << trajectories << " trajectories, " << flips << "/150 sign flips";
  return c.done(s.str());
}

Outcome qed_root() {
  const std::vector<double> p{0, 1.0 / 3, 0.25, -0.0312 + 0.06037, -0.6755 + 0.05074};
  const double root = ode::qed_p_root(p);
  Checks c;
  c.expect(std::abs(root - 0.992) <= 1e-3, "root " + std::to_string(root));
  return c.done("root " + std::to_string(root));
}

Outcome separatrix() {
  const double x0 = 0.01;
  const auto r = ode::separatrix_search(ode::OdeSpec::toy(2), x0, 1.0);
  const double seed = x0 + x0 * x0 + 4 * std::pow(x0, 3) + 27 * std::pow(x0, 4);
  const double bound = 10 * std::pow(x0, 5) * 248;
  Checks c;
  c.expect(std::abs(r.g0 - seed) < bound, "|g0 - series| = " + std::to_string(std::abs(r.g0 - seed)));
  std::ostringstream s;
  s.precision(12);
  s << "g0 " << r.g0 << ", 4-term series " << seed << ", |diff| " << std::abs(r.g0 - seed) << " < " << bound;
  return c.done(s.str());
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "phi^3 reduction exactness", 5, phi3_reduction},
      {2, "symbolic r-identity instantiation", 5, symbolic_identities},
      {3, "end-to-end solver/recursion equivalence", 30, end_to_end},
      {4, "radius theorem (nonneg)", 60, radius_theorem},
      {5, "degenerate system", 5, degenerate},
      {6, "Hopf axioms", 60, hopf_axioms},
      {7, "ODE oracles", 30, ode_oracles},
      {8, "QED quartic root", 1, qed_root},
      {9, "separatrix seed consistency", 30, separatrix},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_seconds) {
      o.ok = false;
      o.detail += "; over the time budget";
    }
    failed += o.ok ? 0 : 1;
    std::printf("%s %d %s (%.3f s / %.0f s): %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, c.budget_seconds,
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
