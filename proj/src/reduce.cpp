#include "dyson/reduce.hpp"

#include <sstream>
#include <stdexcept>

namespace dyson {

namespace {

LaurentData simple_pole(const Rational& c, int order) {
  std::vector<Rational> v(static_cast<std::size_t>(order) + 2, Rational(0));
  v[0] = c;
  return LaurentData(std::move(v));
}

void append_reduced(ResidueSpec& res, int k, const ReductionResult::Residue& red, int order) {
  auto& kernels = res.primitives[k];
  kernels.push_back(Kernel{laurent_geometric(red.r[static_cast<std::size_t>(k)], order), 0});
  for (int i = 1; i < k; ++i)
    kernels.push_back(Kernel{simple_pole(red.r_ki[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)], order), i});
}

TheorySpec empty_like(const TheorySpec& spec) {
  TheorySpec out;
  out.truncation = spec.truncation;
  out.convention = spec.convention;
  for (const auto& r : spec.residues) out.residues.push_back(ResidueSpec{r.name, r.s, {}});
  return out;
}

}  // namespace

ReductionResult reduce_system(const TheorySpec& spec) {
  const int n_max = spec.truncation;
  const GammaTable target = solve_system(spec);

  ReductionResult result;
  result.truncation = n_max;
  for (const auto& r : spec.residues) {
    const auto size = static_cast<std::size_t>(n_max) + 1;
    result.residues.push_back(
        {r.name, std::vector<Rational>(size, Rational(0)), std::vector<std::vector<Rational>>(size, std::vector<Rational>(size, Rational(0)))});
  }

  // Kernels found so far, evaluated against the fixed target gammas. A new
  // order-n kernel enters the x^n row only through its leading -c L^{i+1}.
  TheorySpec partial = empty_like(spec);
  for (int n = 1; n <= n_max; ++n) {
    for (std::size_t r = 0; r < spec.residues.size(); ++r) {
      const Polynomial row = evaluate_rhs(partial, target, r, n).row(n);
      auto& red = result.residues[r];
      red.r[static_cast<std::size_t>(n)] = row.coeff(1) - target.gamma(r, 1, n);
      for (int i = 1; i < n; ++i)
        red.r_ki[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)] = row.coeff(i + 1) - target.gamma(r, i + 1, n);
    }
    for (std::size_t r = 0; r < spec.residues.size(); ++r)
      append_reduced(partial.residues[r], n, result.residues[r], n_max);
  }
  return result;
}

ReductionResult reduce_single(const TheorySpec& spec) {
  if (spec.residues.size() != 1) throw std::invalid_argument("reduce_single expects exactly one residue");
  return reduce_system(spec);
}

TheorySpec reduced_spec(const TheorySpec& spec, const ReductionResult& result) {
  TheorySpec out = empty_like(spec);
  for (std::size_t r = 0; r < out.residues.size(); ++r)
    for (int k = 1; k <= result.truncation; ++k) append_reduced(out.residues[r], k, result.residues.at(r), spec.truncation);
  return out;
}

bool verify_reduction(const TheorySpec& spec, const ReductionResult& result) {
  if (result.truncation != spec.truncation || result.residues.size() != spec.residues.size()) return false;
  return solve_system(reduced_spec(spec, result)) == solve_system(spec);
}

std::string reduction_csv(const ReductionResult& result) {
  std::ostringstream out;
  out << "residue,k,i,value\n";
  for (const auto& red : result.residues)
    for (int k = 1; k <= result.truncation; ++k) {
      out << red.name << ',' << k << ",0," << to_string(red.r[static_cast<std::size_t>(k)]) << '\n';
      for (int i = 1; i < k; ++i)
        out << red.name << ',' << k << ',' << i << ','
            << to_string(red.r_ki[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)]) << '\n';
    }
  return out.str();
}

}  // namespace dyson
