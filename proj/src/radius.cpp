#include "dyson/radius.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace dyson {

std::vector<double> borel_coefficients(const RationalSeries& gamma1) {
  std::vector<double> a(static_cast<std::size_t>(gamma1.truncation()) + 1, 0.0);
  Rational fact(1);
  for (int n = 0; n <= gamma1.truncation(); ++n) {
    if (n > 0) fact *= n;
    a[static_cast<std::size_t>(n)] = to_double(gamma1[n] / fact);
  }
  return a;
}

RadiusEstimate estimate_radius(std::span<const double> a) {
  const int n_max = static_cast<int>(a.size()) - 1;
  if (n_max < 10)
    throw InsufficientTerms("radius estimate needs at least 10 coefficients, got " + std::to_string(std::max(n_max, 0)));

  RadiusEstimate out;
  out.ratios.assign(a.size(), std::numeric_limits<double>::quiet_NaN());
  for (int n = 1; n <= n_max; ++n)
    if (a[static_cast<std::size_t>(n - 1)] != 0.0)
      out.ratios[static_cast<std::size_t>(n)] = std::abs(a[static_cast<std::size_t>(n)] / a[static_cast<std::size_t>(n - 1)]);

  int last = n_max;
  while (last >= 1 && a[static_cast<std::size_t>(last)] == 0.0) --last;
  if (last < n_max) {
    out.infinite = true;
    return out;
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (int n = n_max / 2 + 1; n <= n_max; ++n) {
    const double r = out.ratios[static_cast<std::size_t>(n)];
    if (!std::isfinite(r)) continue;
    const double x = 1.0 / n;
    sx += x;
    sy += r;
    sxx += x * x;
    sxy += x * r;
    ++count;
  }
  if (count < 2) throw InsufficientTerms("too few nonzero ratios in the tail for a Domb-Sykes fit");
  const double det = count * sxx - sx * sx;
  out.beta = (count * sxy - sx * sy) / det;
  out.alpha = (sy - out.beta * sx) / count;
  out.fitted_points = count;

  // An intercept small against the ratios themselves means the ratios decay to 0.
  const double scale = std::abs(sy / count) + std::abs(out.beta);
  if (out.alpha <= 1e-8 * std::max(scale, 1e-300)) {
    out.infinite = true;
    return out;
  }
  out.radius = 1.0 / out.alpha;
  return out;
}

TheoreticalRadius primitive_radius(const std::vector<Rational>& p) {
  TheoreticalRadius out;
  const int n_max = static_cast<int>(p.size()) - 1;
  std::vector<Rational> b(p.size(), Rational(0));
  Rational fact(1);
  for (int k = 1; k <= n_max; ++k) {
    fact *= k;
    b[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(k)] / fact;
  }
  int first = 1;
  while (first <= n_max && sgn(b[static_cast<std::size_t>(first)]) == 0) ++first;
  int last = n_max;
  while (last >= 1 && sgn(b[static_cast<std::size_t>(last)]) == 0) --last;
  if (first > n_max || last < n_max) {
    out.rho_infinite = true;
    out.rho_source = "finite-support";
    return out;
  }

  bool gap = false;
  for (int k = first; k <= n_max; ++k) gap = gap || sgn(b[static_cast<std::size_t>(k)]) == 0;
  if (!gap && n_max - first >= 2) {
    // geometric: constant ratio. exponential: |ratio| * (k+1) never grows, so
    // b_k is dominated by c^k / k! and the series is entire.
    bool geometric = true, exponential = true;
    const Rational q0 = b[static_cast<std::size_t>(first + 1)] / b[static_cast<std::size_t>(first)];
    Rational prev_scaled = abs(q0) * (first + 1);
    for (int k = first; k < n_max; ++k) {
      const Rational q = b[static_cast<std::size_t>(k + 1)] / b[static_cast<std::size_t>(k)];
      geometric = geometric && q == q0;
      const Rational scaled = abs(q) * (k + 1);
      exponential = exponential && scaled <= prev_scaled;
      prev_scaled = scaled;
    }
    if (geometric) {
      out.rho = 1.0 / std::abs(to_double(q0));
      out.rho_source = "geometric";
      return out;
    }
    if (exponential) {
      out.rho_infinite = true;
      out.rho_source = "exponential";
      return out;
    }
  }

  if (n_max < 10) {
    // Too short to estimate: the listed values are the whole primitive series.
    out.rho_infinite = true;
    out.rho_source = "finite-support";
    return out;
  }
  std::vector<double> bd(b.size());
  std::transform(b.begin(), b.end(), bd.begin(), [](const Rational& v) { return to_double(v); });
  const RadiusEstimate est = estimate_radius(bd);
  out.rho_infinite = est.infinite;
  out.rho = est.radius;
  out.rho_source = "estimated";
  return out;
}

TheoreticalRadius theoretical_radius(const PrimitiveSeries& p, const std::vector<int>& s) {
  TheoreticalRadius out;
  bool finite_rho = false;
  Rational sum(0);
  for (std::size_t r = 0; r < p.p.size(); ++r) {
    const auto& pr = p.p[r];
    for (std::size_t k = 1; k < pr.size(); ++k) out.lower_bound_only = out.lower_bound_only || sgn(pr[k]) < 0;
    const TheoreticalRadius rr = primitive_radius(pr);
    if (!rr.rho_infinite && (!finite_rho || rr.rho < out.rho)) {
      out.rho = rr.rho;
      out.rho_source = rr.rho_source;
      finite_rho = true;
    } else if (!finite_rho && out.rho_source.empty()) {
      out.rho_source = rr.rho_source;
    }
    if (pr.size() > 1) sum += std::abs(s[r]) * pr[1];
  }
  out.rho_infinite = !finite_rho;

  if (p.p.size() == 1 && s.size() == 1 && s[0] == 1) {
    const auto& pr = p.p[0];
    bool only_first = true;
    for (std::size_t k = 2; k < pr.size(); ++k) only_first = only_first && sgn(pr[k]) == 0;
    if (only_first) {
      out.boundary_case = true;
      out.infinite = true;
      return out;
    }
  }

  const bool beta_infinite = sgn(sum) == 0;
  const double beta_radius = beta_infinite ? 0.0 : 1.0 / std::abs(to_double(sum));
  if (out.rho_infinite && beta_infinite) {
    out.infinite = true;
  } else if (out.rho_infinite) {
    out.value = beta_radius;
  } else if (beta_infinite) {
    out.value = out.rho;
  } else {
    out.value = std::min(out.rho, beta_radius);
  }
  return out;
}

std::optional<bool> same_radius_check(const std::vector<RationalSeries>& gamma1, const PrimitiveSeries& p,
                                      double rel_tol) {
  for (const auto& pr : p.p)
    for (std::size_t k = 1; k < pr.size(); ++k)
      if (sgn(pr[k]) < 0) return std::nullopt;
  std::vector<RadiusEstimate> est;
  for (const auto& g : gamma1) est.push_back(estimate_radius(borel_coefficients(g)));
  for (std::size_t i = 0; i < est.size(); ++i)
    for (std::size_t j = i + 1; j < est.size(); ++j) {
      if (est[i].infinite != est[j].infinite) return false;
      if (est[i].infinite) continue;
      const double denom = std::min(est[i].radius, est[j].radius);
      if (std::abs(est[i].radius - est[j].radius) > rel_tol * denom) return false;
    }
  return true;
}

bool borel_nonnegative(const RationalSeries& gamma1) {
  for (int n = 0; n <= gamma1.truncation(); ++n)
    if (sgn(gamma1[n]) < 0) return false;
  return true;
}

bool lower_bound_holds(const RationalSeries& gamma1, const std::vector<Rational>& p) {
  for (int n = 1; n <= gamma1.truncation() && static_cast<std::size_t>(n) < p.size(); ++n)
    if (gamma1[n] < p[static_cast<std::size_t>(n)]) return false;
  return true;
}

RadiusReport radius_report(const PrimitiveSeries& p, const std::vector<int>& s) {
  RadiusReport report;
  const auto gamma1 = second_recursion_system(p, s);
  report.theory = theoretical_radius(p, s);
  for (std::size_t r = 0; r < gamma1.size(); ++r) {
    RadiusReport::Residue res;
    res.name = r < p.residues.size() ? p.residues[r] : "G" + std::to_string(r + 1);
    res.a = borel_coefficients(gamma1[r]);
    res.estimate = estimate_radius(res.a);
    res.negative_coefficients = !borel_nonnegative(gamma1[r]);
    if (!res.estimate.infinite && !report.theory.infinite)
      res.deviation = std::abs(res.estimate.radius - report.theory.value) / report.theory.value;
    report.residues.push_back(std::move(res));
  }
  if (gamma1.size() > 1) report.same_radius = same_radius_check(gamma1, p);
  return report;
}

namespace {
nlohmann::json finite_or_null(bool infinite, double v) { return infinite ? nlohmann::json(nullptr) : nlohmann::json(v); }
}  // namespace

std::string radius_report_json(const RadiusReport& report) {
  using nlohmann::json;
  json doc;
  const auto& t = report.theory;
  doc["theory"] = {{"radius", finite_or_null(t.infinite, t.value)},
                   {"infinite", t.infinite},
                   {"lower_bound_only", t.lower_bound_only},
                   {"boundary_case", t.boundary_case},
                   {"rho", finite_or_null(t.rho_infinite, t.rho)},
                   {"rho_source", t.rho_source}};
  doc["residues"] = json::array();
  for (const auto& r : report.residues) {
    json ratios = json::array();
    for (std::size_t n = 1; n < r.estimate.ratios.size(); ++n) {
      const double v = r.estimate.ratios[n];
      ratios.push_back(std::isfinite(v) ? json(v) : json(nullptr));
    }
    doc["residues"].push_back({{"name", r.name},
                               {"estimate", finite_or_null(r.estimate.infinite, r.estimate.radius)},
                               {"infinite", r.estimate.infinite},
                               {"domb_sykes_alpha", r.estimate.alpha},
                               {"domb_sykes_beta", r.estimate.beta},
                               {"fitted_points", r.estimate.fitted_points},
                               {"deviation", r.deviation ? json(*r.deviation) : json(nullptr)},
                               {"negative_coefficients", r.negative_coefficients},
                               {"ratios", std::move(ratios)}});
  }
  if (report.residues.size() < 2)
    doc["same_radius"] = nullptr;
  else
    doc["same_radius"] = report.same_radius ? json(*report.same_radius) : json("exempt");
  return doc.dump(2) + "\n";
}

std::string borel_csv(const RadiusReport& report) {
  std::ostringstream out;
  out.precision(17);
  out << "residue,n,a_n\n";
  for (const auto& r : report.residues)
    for (std::size_t n = 1; n < r.a.size(); ++n) out << r.name << ',' << n << ',' << r.a[n] << '\n';
  return out.str();
}

}  // namespace dyson
