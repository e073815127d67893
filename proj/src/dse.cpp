#include "dyson/dse.hpp"

#include <sstream>
#include <stdexcept>

namespace dyson {

std::string to_string(OperatorConvention c) { return c == OperatorConvention::rg ? "rg" : "d_rho"; }

OperatorConvention parse_convention(const std::string& name) {
  if (name == "rg") return OperatorConvention::rg;
  if (name == "d_rho") return OperatorConvention::d_rho;
  throw std::invalid_argument("unknown convention '" + name + "' (expected rg or d_rho)");
}

std::vector<int> TheorySpec::exponents() const {
  std::vector<int> s;
  s.reserve(residues.size());
  for (const auto& r : residues) s.push_back(r.s);
  return s;
}

TheorySpec TheorySpec::single(int s, LaurentData f, int truncation, OperatorConvention convention) {
  TheorySpec spec;
  spec.truncation = truncation;
  spec.convention = convention;
  ResidueSpec r;
  r.name = "G";
  r.s = s;
  r.primitives[1].push_back(Kernel{std::move(f), 0});
  spec.residues.push_back(std::move(r));
  return spec;
}

GammaTable::GammaTable(std::vector<std::string> residues, int truncation)
    : names_(std::move(residues)), truncation_(truncation), tables_(names_.size(), BivariateSeries(truncation)) {}

Polynomial kernel_phi(const LaurentData& f, int m, int max_l, OperatorConvention convention) {
  // u-th term: ((-L)^u / u!) f_{m-u}, u = 1..m+1.
  std::vector<Rational> c(static_cast<std::size_t>(std::min(m + 1, max_l)) + 1, Rational(0));
  Rational inv_fact(1);
  for (int u = 1; u <= m + 1; ++u) {
    inv_fact /= u;
    if (u > max_l) break;
    const Rational& fj = f.at(m - u);
    c[static_cast<std::size_t>(u)] = (u % 2 == 0 ? inv_fact : -inv_fact) * fj;
  }
  Rational scale = factorial(static_cast<unsigned>(m));
  if (convention == OperatorConvention::rg && m % 2 == 1) scale = -scale;
  return scale * Polynomial(std::move(c));
}

namespace {

// Operator base 1 - tau sign(s) sum_k gamma_k(x) D^k as a bivariate series in
// (x, D); tau = -1 for rg and +1 for d_rho.
BivariateSeries operator_base(const BivariateSeries& gamma, int s, OperatorConvention convention, int n) {
  const int tau = convention == OperatorConvention::rg ? -1 : 1;
  const Rational k(-tau * sign_of(s));
  return BivariateSeries::one(n) + k * gamma.truncated(n);
}

}  // namespace

BivariateSeries evaluate_rhs(const TheorySpec& spec, const GammaTable& gamma, std::size_t r, int n) {
  const auto& res = spec.residues.at(r);
  const auto s = spec.exponents();
  BivariateSeries rhs(n);
  if (n < 1) return rhs;

  std::vector<BivariateSeries> bases;
  bases.reserve(s.size());
  for (std::size_t j = 0; j < s.size(); ++j)
    bases.push_back(operator_base(gamma.table(j), s[j], spec.convention, n - 1));

  for (const auto& [k, kernels] : res.primitives) {
    if (k < 1 || k > n || kernels.empty()) continue;
    const int depth = n - k;
    // Op = prod_j base_j^{e_j}, e_r = 1 - s_r k, e_j = -s_j k.
    BivariateSeries op = BivariateSeries::one(depth);
    for (std::size_t j = 0; j < s.size(); ++j) {
      const int e = (j == r ? 1 : 0) - s[j] * k;
      if (e != 0) op = op * pow(bases[j].truncated(depth), e);
    }
    for (const Kernel& ker : kernels) {
      for (int m = 0; m <= depth; ++m) {
        const Polynomial phi = kernel_phi(ker.mellin, m, n, spec.convention).shifted(ker.log_power);
        if (phi.is_zero()) continue;
        for (int x = m; x <= depth; ++x) {
          const Rational c = op.at(x, m);
          if (sgn(c) == 0) continue;
          for (int l = 0; l <= phi.degree(); ++l)
            if (sgn(phi.coeff(l)) != 0) rhs.add(x + k, l, c * phi.coeff(l));
        }
      }
    }
  }
  return rhs;
}

GammaTable solve_system(const TheorySpec& spec) {
  if (spec.truncation < 1) throw std::invalid_argument("truncation must be at least 1");
  std::vector<std::string> names;
  for (const auto& r : spec.residues) {
    if (r.s == 0) throw std::invalid_argument("residue '" + r.name + "' has s = 0");
    names.push_back(r.name);
  }
  GammaTable g(std::move(names), spec.truncation);
  for (int n = 1; n <= spec.truncation; ++n) {
    // Every residue at order n depends only on orders < n, so compute all
    // right-hand sides before writing any row.
    std::vector<Polynomial> rows;
    for (std::size_t r = 0; r < g.size(); ++r) rows.push_back(evaluate_rhs(spec, g, r, n).row(n));
    for (std::size_t r = 0; r < g.size(); ++r)
      for (int k = 1; k <= rows[r].degree(); ++k) g.set(r, k, n, rows[r].coeff(k));
  }
  return g;
}

GammaTable solve_single(const TheorySpec& spec) {
  if (spec.residues.size() != 1) throw std::invalid_argument("solve_single expects exactly one residue");
  return solve_system(spec);
}

std::string gamma_csv(const GammaTable& table) {
  std::ostringstream out;
  out << "residue,k,j,value\n";
  for (std::size_t r = 0; r < table.size(); ++r)
    for (int k = 1; k <= table.truncation(); ++k)
      for (int j = k; j <= table.truncation(); ++j)
        out << table.residues()[r] << ',' << k << ',' << j << ',' << to_string(table.gamma(r, k, j)) << '\n';
  return out.str();
}

}  // namespace dyson
