#include "dyson/ode.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <sstream>

#include "dyson/error.hpp"

namespace dyson::ode {

OdeSpec OdeSpec::toy(int s, double m) {
  OdeSpec spec;
  spec.mode = Mode::single;
  spec.m = m;
  spec.s = {s};
  spec.p = {{0.0, 1.0}};
  return spec;
}

OdeSpec OdeSpec::phi4(std::vector<double> p_plus, std::vector<double> p_minus) {
  OdeSpec spec;
  spec.mode = Mode::system;
  spec.s = {-1, 2};
  spec.p = {std::move(p_plus), std::move(p_minus)};
  spec.g_min = -1.0;
  return spec;
}

double eval_poly(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

double rhs_single(double x, double g, const OdeSpec& spec) {
  const double den = std::abs(spec.s[0]) * x * g;
  if (std::abs(x * g) < 1e-14) throw SingularPoint("singular point of the field at x*g = 0");
  const double sigma = spec.s[0] < 0 ? -1.0 : 1.0;
  return (spec.m * g + sigma * g * g - eval_poly(spec.p[0], x)) / den;
}

std::vector<double> rhs_system(double x, const std::vector<double>& g, const OdeSpec& spec) {
  double beta = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) beta += std::abs(spec.s[j]) * g[j];
  const double den = x * beta;
  if (std::abs(den) < 1e-14) throw SingularPoint("singular point of the field at x*sum|s_j|g_j = 0");
  std::vector<double> out(g.size());
  for (std::size_t r = 0; r < g.size(); ++r) {
    const double sigma = spec.s[r] < 0 ? -1.0 : 1.0;
    out[r] = (spec.m * g[r] + sigma * g[r] * g[r] - eval_poly(spec.p[r], x)) / den;
  }
  return out;
}

double defining_residual(double x, double g, double slope, const OdeSpec& spec) {
  const double sigma = spec.s[0] < 0 ? -1.0 : 1.0;
  return spec.m * g + sigma * g * g - eval_poly(spec.p[0], x) - std::abs(spec.s[0]) * x * g * slope;
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::reached_right_edge: return "reached-right-edge";
    case Termination::died: return "died";
    case Termination::left_window: return "left-window";
    case Termination::step_underflow: return "step-underflow";
  }
  return "unknown";
}

// --- Dormand-Prince 5(4) ----------------------------------------------------

namespace {

using Vec = std::vector<double>;
using Field = std::function<Vec(double, const Vec&)>;

constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;
// Continuous extension of order 4.
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

Vec axpy(const Vec& y, double h, std::initializer_list<std::pair<double, const Vec*>> terms) {
  Vec out = y;
  for (const auto& [a, k] : terms)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * a * (*k)[i];
  return out;
}

bool finite(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](double d) { return std::isfinite(d); });
}

struct StepResult {
  bool ok = false;  // stages evaluated and finite
  double err = 0;
  Vec y1, k7;
  DenseSegment seg;
};

StepResult dp_step(const Field& f, double x, const Vec& y, const Vec& k1, double h, const IntegratorOptions& opt) {
  StepResult res;
  try {
    const Vec k2 = f(x + c2 * h, axpy(y, h, {{a21, &k1}}));
    const Vec k3 = f(x + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
    const Vec k4 = f(x + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const Vec k5 = f(x + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const Vec k6 = f(x + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    res.y1 = axpy(y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
    res.k7 = f(x + h, res.y1);
    if (!finite(res.y1) || !finite(res.k7)) return res;

    double acc = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * res.k7[i]);
      const double sc = opt.atol + opt.rtol * std::max(std::abs(y[i]), std::abs(res.y1[i]));
      acc += (e / sc) * (e / sc);
    }
    res.err = std::sqrt(acc / static_cast<double>(y.size()));

    auto& s = res.seg;
    s.x0 = x;
    s.h = h;
    s.r1 = y;
    s.r2.resize(y.size());
    s.r3.resize(y.size());
    s.r4.resize(y.size());
    s.r5.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      s.r2[i] = res.y1[i] - y[i];
      s.r3[i] = h * k1[i] - s.r2[i];
      s.r4[i] = s.r2[i] - h * res.k7[i] - s.r3[i];
      s.r5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * res.k7[i]);
    }
    res.ok = std::isfinite(res.err);
  } catch (const SingularPoint&) {
    res.ok = false;
  }
  return res;
}

double next_step(double h, double err) {
  const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
  return h * factor;
}

// Follows a steep descent towards g = 0 as x(g). Appends samples to t and
// returns true when g reaches eps_die before x_end.
bool follow_descent(const OdeSpec& spec, Trajectory& t, double x_end, const IntegratorOptions& opt) {
  // Integration variable u = -g, so u increases as g falls.
  const Field inv = [&spec](double u, const Vec& xs) -> Vec {
    const double slope = rhs_single(xs[0], -u, spec);
    if (slope >= 0.0) throw SingularPoint("trajectory turned during descent");
    return {1.0 / -slope};
  };
  double u = -t.y.back()[0];
  const double u_end = -opt.eps_die;
  Vec xs{t.x.back()};
  Vec k1;
  try {
    k1 = inv(u, xs);
  } catch (const SingularPoint&) {
    return false;
  }
  double h = std::min(1e-3 * std::abs(u), u_end - u);
  IntegratorOptions local = opt;
  local.atol = 1e-14;
  for (std::size_t step = 0; step < opt.max_steps && u < u_end; ++step) {
    if (h < 1e-18) return false;
    StepResult r = dp_step(inv, u, xs, k1, h, local);
    if (!r.ok) {
      h *= 0.25;
      continue;
    }
    if (r.err > 1.0) {
      h = next_step(h, r.err);
      continue;
    }
    u += h;
    xs = r.y1;
    k1 = r.k7;
    if (xs[0] >= x_end) return false;
    t.x.push_back(xs[0]);
    t.y.push_back({-u});
    h = std::min(next_step(h, r.err), u_end - u);
  }
  if (u < u_end) return false;
  t.death_x = xs[0];
  return true;
}

}  // namespace

std::vector<double> DenseSegment::value(double x) const {
  const double th = (x - x0) / h, w = 1.0 - th;
  std::vector<double> out(r1.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = r1[i] + th * (r2[i] + w * (r3[i] + th * (r4[i] + w * r5[i])));
  return out;
}

std::vector<double> DenseSegment::derivative(double x) const {
  const double th = (x - x0) / h, w = 1.0 - th;
  std::vector<double> out(r1.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = (r2[i] + (w - th) * r3[i] + (2 * th * w - th * th) * r4[i] + (2 * th * w * w - 2 * th * th * w) * r5[i]) / h;
  return out;
}

Trajectory integrate(const OdeSpec& spec, double x0, const std::vector<double>& g0, double x_end,
                     const IntegratorOptions& opt) {
  if (!(x0 > 0.0) || !(x_end > x0)) throw DomainError("integrate needs 0 < x0 < x_end");
  const bool single = spec.mode == OdeSpec::Mode::single;
  const Field f = [&spec, single](double x, const Vec& y) -> Vec {
    if (single) return {rhs_single(x, y[0], spec)};
    return rhs_system(x, y, spec);
  };

  Trajectory t;
  t.x.push_back(x0);
  t.y.push_back(g0);
  double x = x0;
  Vec y = g0;
  Vec k1;
  try {
    k1 = f(x, y);
  } catch (const SingularPoint&) {
    t.termination = Termination::step_underflow;
    return t;
  }
  double h = std::min(opt.h_init, x_end - x);

  for (std::size_t step = 0; step < opt.max_steps; ++step) {
    if (x >= x_end) {
      t.termination = Termination::reached_right_edge;
      return t;
    }
    if (h < opt.h_min) {
      t.termination = Termination::step_underflow;
      return t;
    }
    StepResult r = dp_step(f, x, y, k1, h, opt);
    if (!r.ok) {
      h *= 0.25;
      continue;
    }
    if (r.err > 1.0) {
      h = next_step(h, r.err);
      continue;
    }

    const bool last = x + h >= x_end;
    x = last ? x_end : x + h;
    y = r.y1;
    k1 = r.k7;
    t.x.push_back(x);
    t.y.push_back(y);
    t.segments.push_back(std::move(r.seg));

    if (single && y[0] < opt.eps_die && k1[0] < 0.0) {
      t.termination = Termination::died;
      t.death_x = x;
      return t;
    }
    for (double v : y)
      if (v > spec.g_max || v < spec.g_min) {
        t.termination = Termination::left_window;
        return t;
      }
    if (single && k1[0] < opt.steep_slope && y[0] > 0.0) {
      if (follow_descent(spec, t, x_end, opt)) {
        t.termination = Termination::died;
        return t;
      }
      // The descent did not complete: resume forward from the last forward sample.
      while (t.x.back() != x) {
        t.x.pop_back();
        t.y.pop_back();
      }
    }
    h = std::min(next_step(h, r.err), opt.h_max);
    // Bounded relative change per step keeps the dense derivative accurate near g = 0.
    if (single && y[0] > 0.0 && k1[0] < 0.0) h = std::min(h, std::max(0.05 * y[0] / -k1[0], opt.h_min));
    h = std::min(h, x_end - x);
  }
  t.termination = Termination::step_underflow;
  return t;
}

Trajectory integrate(const OdeSpec& spec, double x0, double g0, double x_end, const IntegratorOptions& opt) {
  return integrate(spec, x0, std::vector<double>{g0}, x_end, opt);
}

double max_midpoint_residual(const Trajectory& t, const OdeSpec& spec) {
  double worst = 0.0;
  for (const auto& seg : t.segments) {
    const double xm = seg.x0 + 0.5 * seg.h;
    worst = std::max(worst, std::abs(defining_residual(xm, seg.value(xm)[0], seg.derivative(xm)[0], spec)));
  }
  return worst;
}

// --- Nullcline, series, separatrix ------------------------------------------

double nullcline(const OdeSpec& spec, double x) {
  const double sigma = spec.s[0] < 0 ? -1.0 : 1.0;
  const double disc = spec.m * spec.m + 4.0 * sigma * eval_poly(spec.p[0], x);
  if (disc < 0.0) throw DomainError("nullcline undefined: negative discriminant at x = " + std::to_string(x));
  return (-spec.m + std::sqrt(disc)) / (2.0 * sigma);
}

std::vector<double> asymptotic_series(const OdeSpec& spec, int terms) {
  const double sigma = spec.s[0] < 0 ? -1.0 : 1.0;
  const int abs_s = std::abs(spec.s[0]);
  std::vector<double> g(static_cast<std::size_t>(terms) + 1, 0.0);
  for (int n = 1; n <= terms; ++n) {
    const auto nu = static_cast<std::size_t>(n);
    double acc = nu < spec.p[0].size() ? spec.p[0][nu] : 0.0;
    for (int j = 1; j < n; ++j) acc += (abs_s * j - sigma) * g[static_cast<std::size_t>(j)] * g[nu - static_cast<std::size_t>(j)];
    g[nu] = acc / spec.m;
  }
  return {g.begin() + 1, g.end()};
}

double eval_series(const std::vector<double>& coeffs_from_one, double x) {
  double v = 0.0;
  for (auto it = coeffs_from_one.rbegin(); it != coeffs_from_one.rend(); ++it) v = (v + *it) * x;
  return v;
}

namespace {

bool dies(const OdeSpec& spec, double x0, double g0, double x_probe) {
  const Trajectory t = integrate(spec, x0, g0, x_probe);
  if (t.termination == Termination::died) return true;
  if (t.termination == Termination::left_window) return t.y.back()[0] < spec.g_min + 0.5 * (g0 - spec.g_min);
  if (t.termination == Termination::step_underflow) return t.y.back()[0] < 1e-3 * g0;
  return false;
}

OdeSpec search_window(const OdeSpec& spec) {
  OdeSpec w = spec;
  w.g_min = 0.0;
  w.g_max = std::max(spec.g_max, 1e6);
  return w;
}

SeparatrixResult bisect(const OdeSpec& spec, double x0, double x_probe, double lo, double hi, double tol) {
  SeparatrixResult res;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (dies(spec, x0, mid, x_probe) ? lo : hi) = mid;
    ++res.bisections;
  }
  res.lo = lo;
  res.hi = hi;
  res.g0 = 0.5 * (lo + hi);
  return res;
}

}  // namespace

SeparatrixResult separatrix_search(const OdeSpec& spec, double x0, double x_probe, double lo, double hi,
                                   double tol) {
  const OdeSpec w = search_window(spec);
  if (!(lo < hi)) throw NoBracket("separatrix bracket must satisfy lo < hi");
  const bool lo_dies = dies(w, x0, lo, x_probe);
  const bool hi_dies = dies(w, x0, hi, x_probe);
  if (lo_dies == hi_dies)
    throw NoBracket(std::string("both bracket ends ") + (lo_dies ? "die" : "escape") + " before x = " +
                    std::to_string(x_probe));
  auto res = lo_dies ? bisect(w, x0, x_probe, lo, hi, tol) : bisect(w, x0, x_probe, hi, lo, tol);
  res.seed = 0.5 * (lo + hi);
  return res;
}

SeparatrixResult separatrix_search(const OdeSpec& spec, double x0, double x_probe, double tol) {
  if (spec.mode != OdeSpec::Mode::single) throw DomainError("separatrix search needs a single equation");
  const OdeSpec w = search_window(spec);
  const double seed = eval_series(asymptotic_series(spec, 4), x0);
  if (!(seed > 0.0)) throw NoBracket("asymptotic seed is not positive at x0");
  double delta = std::max(1e-6 * seed, 1e-14);
  for (int attempt = 0; attempt < 40; ++attempt, delta *= 4.0) {
    const double lo = std::max(seed - delta, 0.5 * seed * 1e-6);
    const double hi = seed + delta;
    if (dies(w, x0, lo, x_probe) && !dies(w, x0, hi, x_probe)) {
      auto res = bisect(w, x0, x_probe, lo, hi, tol);
      res.seed = seed;
      return res;
    }
  }
  throw NoBracket("no died/escaped pair found around the asymptotic seed");
}

double qed_p_root(const std::vector<double>& coeffs, double lo, double hi) {
  // Open interval: a zero at an endpoint is not a sign change.
  double flo = eval_poly(coeffs, lo);
  const double fhi = eval_poly(coeffs, hi);
  if (flo == 0.0 || fhi == 0.0 || (flo > 0) == (fhi > 0))
    throw NoSignChange("P has the same sign at " + std::to_string(lo) + " and " + std::to_string(hi));
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const double fm = eval_poly(coeffs, mid);
    if (fm == 0.0) return mid;
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double lambert_w0(double z) {
  constexpr double inv_e = 0.36787944117144233;
  if (z < -inv_e) {
    if (z > -inv_e - 1e-15) return -1.0;
    throw DomainError("W0 undefined below -1/e");
  }
  if (z == 0.0) return 0.0;
  double w;
  if (z < -0.25) {
    const double p = std::sqrt(2.0 * (std::exp(1.0) * z + 1.0));
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else if (z < 3.0) {
    w = std::log1p(z);
    if (std::abs(z) < 1e-3) w = z * (1.0 - z);
  } else {
    const double l = std::log(z);
    w = l - std::log(l);
  }
  for (int it = 0; it < 100; ++it) {
    const double ew = std::exp(w);
    const double fw = w * ew - z;
    const double wp1 = w + 1.0;
    if (wp1 == 0.0) break;
    const double dw = fw / (ew * wp1 - (w + 2.0) * fw / (2.0 * wp1));
    w -= dw;
    if (std::abs(dw) <= 1e-16 * (1.0 + std::abs(w))) break;
  }
  return w;
}

double lambert_family(double x, double c) { return x * (1.0 + lambert_w0(c * std::exp(-(1.0 + x) / x))); }

double lambert_family_derivative(double x, double c) {
  const double w = lambert_w0(c * std::exp(-(1.0 + x) / x));
  return 1.0 + w + w / (x * (1.0 + w));
}

// --- Fields and output ------------------------------------------------------

namespace {

FieldSample sample_at(const OdeSpec& spec, double x, double g) {
  FieldSample s;
  s.x = x;
  s.g = g;
  try {
    s.slope = rhs_single(x, g, spec);
  } catch (const SingularPoint&) {
    s.masked = true;
    return s;
  }
  if (!std::isfinite(s.slope)) {
    s.masked = true;
    return s;
  }
  const double norm = std::hypot(1.0, s.slope);
  s.dx = 1.0 / norm;
  s.dg = s.slope / norm;
  return s;
}

}  // namespace

std::vector<FieldSample> emit_field_serial(const OdeSpec& spec, const Grid& grid) {
  std::vector<FieldSample> out(static_cast<std::size_t>(grid.nx) * static_cast<std::size_t>(grid.ny));
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i)
      out[static_cast<std::size_t>(j) * grid.nx + i] = sample_at(spec, grid.x_at(i), grid.g_at(j));
  return out;
}

std::vector<FieldSample> emit_field_parallel(const OdeSpec& spec, const Grid& grid) {
  std::vector<FieldSample> out(static_cast<std::size_t>(grid.nx) * static_cast<std::size_t>(grid.ny));
  const long total = static_cast<long>(out.size());
#pragma omp parallel for schedule(static)
  for (long idx = 0; idx < total; ++idx) {
    const int i = static_cast<int>(idx % grid.nx), j = static_cast<int>(idx / grid.nx);
    out[static_cast<std::size_t>(idx)] = sample_at(spec, grid.x_at(i), grid.g_at(j));
  }
  return out;
}

std::vector<FieldSample> emit_system_slice(const OdeSpec& spec, const Grid& grid, double x) {
  std::vector<FieldSample> out;
  out.reserve(static_cast<std::size_t>(grid.nx) * static_cast<std::size_t>(grid.ny));
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      FieldSample s;
      s.x = grid.x_at(i);
      s.g = grid.g_at(j);
      try {
        const auto d = rhs_system(x, {s.x, s.g}, spec);
        const double norm = std::hypot(d[0], d[1]);
        if (!std::isfinite(norm) || norm == 0.0) {
          s.masked = true;
        } else {
          s.dx = d[0] / norm;
          s.dg = d[1] / norm;
          s.slope = d[0] != 0.0 ? d[1] / d[0] : std::numeric_limits<double>::infinity();
        }
      } catch (const SingularPoint&) {
        s.masked = true;
      }
      out.push_back(s);
    }
  return out;
}

std::string field_dat(const std::vector<FieldSample>& field) {
  std::ostringstream out;
  out << std::setprecision(10);
  out << "# x g dx dg masked\n";
  for (const auto& s : field) out << s.x << ' ' << s.g << ' ' << s.dx << ' ' << s.dg << ' ' << (s.masked ? 1 : 0) << '\n';
  return out.str();
}

std::string field_svg(const std::vector<FieldSample>& field, const Grid& grid, const std::string& title,
                      const std::vector<Trajectory>& overlays, const std::vector<double>& nullcline_x,
                      const std::vector<double>& nullcline_g) {
  constexpr double size = 600, margin = 50;
  const double sx = size / (grid.x_hi - grid.x_lo), sy = size / (grid.g_hi - grid.g_lo);
  auto px = [&](double x) { return margin + (x - grid.x_lo) * sx; };
  auto py = [&](double g) { return margin + size - (g - grid.g_lo) * sy; };
  const double cell = 0.4 * std::min(size / std::max(grid.nx - 1, 1), size / std::max(grid.ny - 1, 1));

  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size + 2 * margin << "\" height=\""
      << size + 2 * margin << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << margin << "\" y=\"30\" font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";
  out << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << size << "\" height=\"" << size
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  out << "<text x=\"" << margin << "\" y=\"" << size + margin + 20 << "\" font-size=\"12\">" << grid.x_lo
      << "</text><text x=\"" << size + margin - 20 << "\" y=\"" << size + margin + 20 << "\" font-size=\"12\">"
      << grid.x_hi << "</text>\n";
  out << "<text x=\"5\" y=\"" << size + margin << "\" font-size=\"12\">" << grid.g_lo << "</text><text x=\"5\" y=\""
      << margin + 10 << "\" font-size=\"12\">" << grid.g_hi << "</text>\n";
  out << "<g stroke=\"#1f4e9c\" stroke-width=\"1\">\n";
  for (const auto& s : field) {
    const double cx = px(s.x), cy = py(s.g);
    if (s.masked) {
      out << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"1.5\" fill=\"#999\" stroke=\"none\"/>\n";
      continue;
    }
    double vx = s.dx * sx, vy = -s.dg * sy;
    const double n = std::hypot(vx, vy);
    if (n == 0.0) continue;
    vx *= cell / n;
    vy *= cell / n;
    const double x1 = cx - 0.5 * vx, y1 = cy - 0.5 * vy, x2 = cx + 0.5 * vx, y2 = cy + 0.5 * vy;
    // Arrow head: two short strokes rotated +-25 degrees back from the tip.
    const double hx = -0.3 * vx, hy = -0.3 * vy, c = std::cos(0.44), sn = std::sin(0.44);
    out << "<path d=\"M" << x1 << ',' << y1 << " L" << x2 << ',' << y2 << " M" << x2 + c * hx - sn * hy << ','
        << y2 + sn * hx + c * hy << " L" << x2 << ',' << y2 << " L" << x2 + c * hx + sn * hy << ','
        << y2 - sn * hx + c * hy << "\" fill=\"none\"/>\n";
  }
  out << "</g>\n";
  auto polyline = [&](const std::vector<double>& xs, const std::vector<double>& gs, const char* color) {
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (gs[i] < grid.g_lo || gs[i] > grid.g_hi || xs[i] < grid.x_lo || xs[i] > grid.x_hi) continue;
      out << px(xs[i]) << ',' << py(gs[i]) << ' ';
    }
    out << "\"/>\n";
  };
  if (!nullcline_x.empty()) polyline(nullcline_x, nullcline_g, "#2a9d3a");
  for (const auto& t : overlays) {
    std::vector<double> gs;
    for (const auto& y : t.y) gs.push_back(y[0]);
    polyline(t.x, gs, "#c0392b");
  }
  out << "</svg>\n";
  return out.str();
}

std::string trajectory_csv(const Trajectory& t) {
  std::ostringstream out;
  out << std::setprecision(15);
  out << "x";
  for (std::size_t r = 0; r < (t.y.empty() ? 1 : t.y.front().size()); ++r) out << ",g" << r + 1;
  out << '\n';
  for (std::size_t i = 0; i < t.x.size(); ++i) {
    out << t.x[i];
    for (double v : t.y[i]) out << ',' << v;
    out << '\n';
  }
  return out.str();
}

}  // namespace dyson::ode
