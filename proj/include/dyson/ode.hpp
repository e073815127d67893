#pragma once

#include <functional>
#include <string>
#include <vector>

namespace dyson::ode {

/// Single equation  m g + sign(s) g^2 - P(x) = |s| x g g'.
/// System  m g_r + sign(s_r) g_r^2 - P_r(x) = x g_r' sum_j |s_j| g_j.
struct OdeSpec {
  enum class Mode { single, system };
  Mode mode = Mode::single;
  double m = 1.0;
  /// One exponent per residue; a single equation has one.
  std::vector<int> s{2};
  /// P_r(x) = sum_i P[r][i] x^i.
  std::vector<std::vector<double>> p{{0.0, 1.0}};
  double x_min = 0.0, x_max = 1.0, g_min = 0.0, g_max = 1.0;

  static OdeSpec toy(int s, double m = 1.0);
  /// s = (-1, 2): the vertex equation loses its quadratic sign.
  static OdeSpec phi4(std::vector<double> p_plus, std::vector<double> p_minus);
  std::size_t dimension() const { return s.size(); }
};

double eval_poly(const std::vector<double>& c, double x);

/// Slope of the single equation. Throws SingularPoint when |x g| < 1e-14.
double rhs_single(double x, double g, const OdeSpec& spec);
/// Slopes of the system. Throws SingularPoint when |x sum_j |s_j| g_j| < 1e-14.
std::vector<double> rhs_system(double x, const std::vector<double>& g, const OdeSpec& spec);
/// m g + sign(s) g^2 - P(x) - |s| x g g'; zero on exact solutions.
double defining_residual(double x, double g, double slope, const OdeSpec& spec);

enum class Termination { reached_right_edge, died, left_window, step_underflow };
std::string to_string(Termination t);

/// One accepted Dormand-Prince step with its continuous extension.
struct DenseSegment {
  double x0 = 0, h = 0;
  std::vector<double> r1, r2, r3, r4, r5;
  std::vector<double> value(double x) const;
  std::vector<double> derivative(double x) const;
};

struct Trajectory {
  std::vector<double> x;
  std::vector<std::vector<double>> y;
  std::vector<DenseSegment> segments;
  Termination termination = Termination::step_underflow;
  /// Abscissa of the vertical-tangent event for died trajectories.
  double death_x = 0.0;
};

struct IntegratorOptions {
  double rtol = 1e-11;
  double atol = 1e-13;
  double h_init = 1e-5;
  double h_min = 1e-14;
  double h_max = 0.02;
  std::size_t max_steps = 500000;
  double eps_die = 1e-9;
  /// Below this slope the approach to g = 0 is followed with x as a function of g.
  double steep_slope = -1e3;
};

/// Integrates from (x0, g0) towards x_end. Windows are taken from spec's g
/// range; x_end must exceed x0 > 0.
Trajectory integrate(const OdeSpec& spec, double x0, const std::vector<double>& g0, double x_end,
                     const IntegratorOptions& opt = {});
Trajectory integrate(const OdeSpec& spec, double x0, double g0, double x_end, const IntegratorOptions& opt = {});

/// Worst |defining_residual| at step midpoints, slopes from the dense output.
double max_midpoint_residual(const Trajectory& t, const OdeSpec& spec);

/// Flat-slope ordinate (-m + sqrt(m^2 + 4 sign(s) P)) / (2 sign(s)), the branch
/// through g = 0 at P = 0. Throws DomainError on a negative discriminant.
double nullcline(const OdeSpec& spec, double x);

/// Coefficients g_1..g_terms of the formal solution about x = 0.
std::vector<double> asymptotic_series(const OdeSpec& spec, int terms);
double eval_series(const std::vector<double>& coeffs_from_one, double x);

struct SeparatrixResult {
  double g0 = 0.0;
  double lo = 0.0, hi = 0.0;
  int bisections = 0;
  double seed = 0.0;
};

/// Bisection on g0 at x0 between a trajectory that dies and one that reaches
/// x_probe. Seeds the bracket from the 4-term asymptotic series. Throws NoBracket.
SeparatrixResult separatrix_search(const OdeSpec& spec, double x0, double x_probe, double tol = 1e-10);
/// Same with an explicit bracket; both ends must classify differently.
SeparatrixResult separatrix_search(const OdeSpec& spec, double x0, double x_probe, double lo, double hi,
                                   double tol = 1e-10);

/// Bisection root of the polynomial on [lo, hi] to 1e-8. Throws NoSignChange.
double qed_p_root(const std::vector<double>& coeffs, double lo = 0.9, double hi = 1.1);

/// Principal branch W0 by Halley iteration. Throws DomainError for z < -1/e.
double lambert_w0(double z);

/// g(x) = x (1 + W0(C e^{-(1+x)/x})) and its derivative; solves the s = 1,
/// m = 1, P = x equation.
double lambert_family(double x, double c);
double lambert_family_derivative(double x, double c);

struct Grid {
  int nx = 30, ny = 30;
  double x_lo = 0.0, x_hi = 1.0, g_lo = 0.0, g_hi = 1.0;
  double x_at(int i) const { return nx == 1 ? x_lo : x_lo + (x_hi - x_lo) * i / (nx - 1); }
  double g_at(int j) const { return ny == 1 ? g_lo : g_lo + (g_hi - g_lo) * j / (ny - 1); }
};

struct FieldSample {
  double x = 0, g = 0;
  double dx = 0, dg = 0;  // unit direction of (1, slope)
  double slope = 0;
  bool masked = false;
};

/// Row-major over g then x: sample (i, j) sits at index j * nx + i.
std::vector<FieldSample> emit_field_serial(const OdeSpec& spec, const Grid& grid);
std::vector<FieldSample> emit_field_parallel(const OdeSpec& spec, const Grid& grid);
inline std::vector<FieldSample> emit_field(const OdeSpec& spec, const Grid& grid) {
  return emit_field_parallel(spec, grid);
}

/// Phase-plane slice of a two-residue system at fixed x: (g_1, g_2) -> (g_1', g_2').
std::vector<FieldSample> emit_system_slice(const OdeSpec& spec, const Grid& grid, double x);

/// Whitespace columns x g dx dg masked.
std::string field_dat(const std::vector<FieldSample>& field);
/// Standalone quiver plot; arrows scaled to the cell size, masked points drawn as dots.
std::string field_svg(const std::vector<FieldSample>& field, const Grid& grid, const std::string& title,
                      const std::vector<Trajectory>& overlays = {}, const std::vector<double>& nullcline_x = {},
                      const std::vector<double>& nullcline_g = {});
std::string trajectory_csv(const Trajectory& t);

}  // namespace dyson::ode
