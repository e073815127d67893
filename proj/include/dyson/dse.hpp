#pragma once

#include <map>
#include <string>
#include <vector>

#include "dyson/rational.hpp"
#include "dyson/series.hpp"

namespace dyson {

// How the insertion operator acts on the regularized kernel.
//
//   rg     kernel (-1)^m m! [rho^m], operator (1 + sign(s) gamma.D)^e.
//          The first and second recursions hold exactly in this convention.
//   d_rho  kernel m! [rho^m], operator (1 - sign(s) gamma.D)^e.
//          Reproduces the published phi^3 reduction table.
enum class OperatorConvention { rg, d_rho };

std::string to_string(OperatorConvention c);
/// Throws std::invalid_argument for anything other than "rg" or "d_rho".
OperatorConvention parse_convention(const std::string& name);

/// One primitive's Mellin transform. log_power > 0 multiplies the kernel by
/// L^log_power, which the reduced 1/rho kernels need.
struct Kernel {
  LaurentData mellin;
  int log_power = 0;
};

struct ResidueSpec {
  std::string name;
  int s = 1;
  /// Loop order k -> primitives F_{k,i}.
  std::map<int, std::vector<Kernel>> primitives;
};

struct TheorySpec {
  std::vector<ResidueSpec> residues;
  int truncation = 1;
  OperatorConvention convention = OperatorConvention::rg;

  std::vector<int> exponents() const;
  /// Single residue with loop-one data only.
  static TheorySpec single(int s, LaurentData f, int truncation,
                           OperatorConvention convention = OperatorConvention::rg);
};

/// gamma^r_{k,j}: for each residue a bivariate table whose (j, k) entry is the
/// coefficient of x^j in gamma_k. Triangular, so entries vanish for k > j.
class GammaTable {
 public:
  GammaTable() = default;
  GammaTable(std::vector<std::string> residues, int truncation);

  int truncation() const { return truncation_; }
  std::size_t size() const { return tables_.size(); }
  const std::vector<std::string>& residues() const { return names_; }

  Rational gamma(std::size_t r, int k, int j) const { return tables_[r].at(j, k); }
  void set(std::size_t r, int k, int j, const Rational& v) { tables_[r].set(j, k, v); }
  /// gamma^r_k(x) as a series in x.
  RationalSeries gamma_k(std::size_t r, int k) const { return tables_[r].column(k); }
  const BivariateSeries& table(std::size_t r) const { return tables_[r]; }
  BivariateSeries& table(std::size_t r) { return tables_[r]; }

  friend bool operator==(const GammaTable&, const GammaTable&) = default;

 private:
  std::vector<std::string> names_;
  int truncation_ = 0;
  std::vector<BivariateSeries> tables_;
};

/// eps^m m! [rho^m]((e^{-L rho} - 1) F(rho)) as a polynomial in L, with
/// eps = -1 for rg and +1 for d_rho. Degree <= min(m + 1, max_l).
Polynomial kernel_phi(const LaurentData& f, int m, int max_l,
                      OperatorConvention convention = OperatorConvention::rg);

/// Right-hand side for residue r as a series in x with polynomial-in-L
/// coefficients, truncated at x^n. Uses every coefficient of `gamma`; callers
/// that solve order by order pass a table whose rows >= n are still zero.
BivariateSeries evaluate_rhs(const TheorySpec& spec, const GammaTable& gamma, std::size_t r, int n);

GammaTable solve_single(const TheorySpec& spec);
GammaTable solve_system(const TheorySpec& spec);

/// Rows of gamma_k(x) as CSV: residue,k,j,value.
std::string gamma_csv(const GammaTable& table);

}  // namespace dyson
