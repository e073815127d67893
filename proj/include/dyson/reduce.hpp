#pragma once

#include <string>
#include <vector>

#include "dyson/dse.hpp"

namespace dyson {

/// Geometric reduction of a theory: at loop order k every Mellin transform of
/// residue r is replaced by r_k/(rho(1-rho)) + sum_{i<k} r_{k,i} L^i / rho.
struct ReductionResult {
  struct Residue {
    std::string name;
    /// r[k] for k = 1..N; index 0 unused and zero.
    std::vector<Rational> r;
    /// r_ki[k][i] for 1 <= i < k <= N; other slots zero.
    std::vector<std::vector<Rational>> r_ki;

    friend bool operator==(const Residue&, const Residue&) = default;
  };
  int truncation = 0;
  std::vector<Residue> residues;

  friend bool operator==(const ReductionResult&, const ReductionResult&) = default;
};

ReductionResult reduce_single(const TheorySpec& spec);
ReductionResult reduce_system(const TheorySpec& spec);

/// Spec whose primitives are the reduced kernels of `result`.
TheorySpec reduced_spec(const TheorySpec& spec, const ReductionResult& result);

/// Re-solves with the reduced kernels and compares against the original solve.
bool verify_reduction(const TheorySpec& spec, const ReductionResult& result);

/// residue,k,i,value with i = 0 for r_k.
std::string reduction_csv(const ReductionResult& result);

}  // namespace dyson
