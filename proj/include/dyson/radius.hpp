#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dyson/recursions.hpp"
#include "dyson/series.hpp"

namespace dyson {

/// a_n = gamma_{1,n} / n!, divided exactly before conversion. Index 0 is a_0.
std::vector<double> borel_coefficients(const RationalSeries& gamma1);

struct RadiusEstimate {
  double radius = 0.0;  // meaningful only when !infinite
  bool infinite = false;
  /// |a_n / a_{n-1}| for n = 1..N; NaN where a_{n-1} = 0.
  std::vector<double> ratios;
  /// Least-squares fit |a_n/a_{n-1}| ~ alpha + beta/n over the tail half.
  double alpha = 0.0;
  double beta = 0.0;
  int fitted_points = 0;
};

/// Domb-Sykes extrapolation on a (index n = coefficient of x^n, a[0] ignored).
/// Trailing zeros or a vanishing intercept mean an infinite radius.
/// Throws InsufficientTerms below 10 coefficients.
RadiusEstimate estimate_radius(std::span<const double> a);

struct TheoreticalRadius {
  double value = 0.0;  // meaningful only when !infinite
  bool infinite = false;
  /// Some p_r(k) < 0: the value is only a lower bound.
  bool lower_bound_only = false;
  /// Single equation with s = 1 and p supported at k = 1 alone.
  bool boundary_case = false;
  double rho = 0.0;
  bool rho_infinite = false;
  /// "finite-support", "geometric", "exponential" or "estimated".
  std::string rho_source;
};

/// Radius of sum_k p(k) x^k / k! for one residue, with the closed forms
/// recognized exactly and everything else estimated. Lists shorter than ten
/// terms without a closed form are taken as the complete (finite) series.
TheoreticalRadius primitive_radius(const std::vector<Rational>& p);

/// min over r of {rho_r, 1/|sum_j |s_j| a_1^j|}, with a_1^j = p_j(1).
TheoreticalRadius theoretical_radius(const PrimitiveSeries& p, const std::vector<int>& s);

/// Pairwise agreement of the per-residue estimates within rel_tol. nullopt for
/// systems with a negative p, where the same-radius statement does not apply.
std::optional<bool> same_radius_check(const std::vector<RationalSeries>& gamma1, const PrimitiveSeries& p,
                                      double rel_tol = 0.1);

/// Every gamma_{1,n} >= 0, checked exactly.
bool borel_nonnegative(const RationalSeries& gamma1);
/// gamma_{1,n} >= p(n) for all n, i.e. a_n >= p(n)/n!, checked exactly.
bool lower_bound_holds(const RationalSeries& gamma1, const std::vector<Rational>& p);

struct RadiusReport {
  struct Residue {
    std::string name;
    std::vector<double> a;
    RadiusEstimate estimate;
    std::optional<double> deviation;
    bool negative_coefficients = false;
  };
  std::vector<Residue> residues;
  TheoreticalRadius theory;
  std::optional<bool> same_radius;
};

RadiusReport radius_report(const PrimitiveSeries& p, const std::vector<int>& s);
std::string radius_report_json(const RadiusReport& report);
/// residue,n,a_n
std::string borel_csv(const RadiusReport& report);

}  // namespace dyson
