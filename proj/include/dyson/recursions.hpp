#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dyson/dse.hpp"
#include "dyson/reduce.hpp"

namespace dyson {

enum class Provenance { direct, reduction };

/// p_r(k) for k = 1..N per residue; p[r][0] is unused and zero.
struct PrimitiveSeries {
  std::vector<std::string> residues;
  std::vector<std::vector<Rational>> p;
  int truncation = 0;
  Provenance provenance = Provenance::direct;

  /// One residue from p(1..N) listed without the unused zero slot.
  static PrimitiveSeries single(const std::vector<Rational>& p_from_one, std::string name = "G");
};

/// p_r(k) = -r_k - 2 r_{k,1}, with r_{1,1} taken as zero.
PrimitiveSeries p_from_reduction(const ReductionResult& red);

/// gamma_{1,n} = p(n) + sum_{j<n} (|s| j - sign(s)) gamma_{1,j} gamma_{1,n-j},
/// with p[n] for n >= 1 (p[0] unused) and zero past the end of p.
RationalSeries second_recursion_single(const std::vector<Rational>& p, int s, int truncation);

/// Coupled form; the cross terms carry |s_j| i gamma^j_{1,n-i} gamma^r_{1,i}.
std::vector<RationalSeries> second_recursion_system(const PrimitiveSeries& p, const std::vector<int>& s);

/// p_r(n) supplied lazily, given gamma^j_{1,i} for every residue j and i < n.
using PrimitiveGenerator =
    std::function<Rational(std::size_t r, int n, const std::vector<RationalSeries>& gamma1)>;
std::vector<RationalSeries> second_recursion_system(const PrimitiveGenerator& p, const std::vector<int>& s,
                                                    int truncation);

/// gamma^r_k = (1/k)(sign(s_r) gamma^r_1 - sum_j |s_j| gamma^j_1 x d/dx) gamma^r_{k-1}
/// for k = 2..K; the table's truncation is that of the gamma1 series.
GammaTable first_recursion(const std::vector<RationalSeries>& gamma1, const std::vector<int>& s, int max_k,
                           std::vector<std::string> names = {});

/// gamma_1 = x/6 - (11/3) gamma_2 - 6 gamma_3 - 4 gamma_4 on a single-residue table.
/// Follows from rho F = -1/6 + (11/6) rho^2 F - rho^3 F + (1/6) rho^4 F with
/// rho^m F contributing (-1)^(m-1) m! gamma_m.
bool phi3_fourth_order_check(const GammaTable& table);

/// Single-residue phi^3 theory: F = -1/(rho(1-rho)(2-rho)(3-rho)), s = 2.
TheorySpec phi3_spec(int truncation, OperatorConvention convention = OperatorConvention::rg);

/// The tuned two-residue system with s = (2, -1) whose second residue
/// degenerates: p^2(1) = p^1(1) = a, p^2(2) = -4 a^2, and for n >= 3
/// p^2(n) = -2 a gamma^1_{1,n-1}. p1 holds p^1(1..N).
std::vector<RationalSeries> degenerate_system(const std::vector<Rational>& p1, int truncation);

}  // namespace dyson
