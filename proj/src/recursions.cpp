#include "dyson/recursions.hpp"

#include <cstdlib>
#include <stdexcept>

namespace dyson {

PrimitiveSeries PrimitiveSeries::single(const std::vector<Rational>& p_from_one, std::string name) {
  PrimitiveSeries out;
  out.residues.push_back(std::move(name));
  std::vector<Rational> p{Rational(0)};
  p.insert(p.end(), p_from_one.begin(), p_from_one.end());
  out.p.push_back(std::move(p));
  out.truncation = static_cast<int>(p_from_one.size());
  return out;
}

PrimitiveSeries p_from_reduction(const ReductionResult& red) {
  PrimitiveSeries out;
  out.truncation = red.truncation;
  out.provenance = Provenance::reduction;
  for (const auto& res : red.residues) {
    out.residues.push_back(res.name);
    std::vector<Rational> p(static_cast<std::size_t>(red.truncation) + 1, Rational(0));
    for (int k = 1; k <= red.truncation; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      p[ku] = -res.r[ku];
      if (k >= 2) p[ku] -= 2 * res.r_ki[ku][1];
    }
    out.p.push_back(std::move(p));
  }
  return out;
}

std::vector<RationalSeries> second_recursion_system(const PrimitiveGenerator& p, const std::vector<int>& s,
                                                    int truncation) {
  for (int v : s)
    if (v == 0) throw std::invalid_argument("s = 0 is the linear case and is not supported");
  const std::size_t nr = s.size();
  std::vector<RationalSeries> g(nr, RationalSeries(truncation));
  for (int n = 1; n <= truncation; ++n) {
    std::vector<Rational> next(nr);
    for (std::size_t r = 0; r < nr; ++r) {
      Rational acc = p(r, n, g);
      const int sr = std::abs(s[r]);
      for (int i = 1; i < n; ++i) {
        if (sgn(g[r][i]) == 0) continue;
        acc += (sr * i - sign_of(s[r])) * g[r][i] * g[r][n - i];
        for (std::size_t j = 0; j < nr; ++j)
          if (j != r) acc += std::abs(s[j]) * i * g[j][n - i] * g[r][i];
      }
      next[r] = acc;
    }
    for (std::size_t r = 0; r < nr; ++r) g[r][n] = next[r];
  }
  return g;
}

std::vector<RationalSeries> second_recursion_system(const PrimitiveSeries& p, const std::vector<int>& s) {
  if (p.p.size() != s.size()) throw std::invalid_argument("primitive series and exponents differ in residue count");
  return second_recursion_system(
      [&p](std::size_t r, int n, const std::vector<RationalSeries>&) {
        const auto& pr = p.p[r];
        return static_cast<std::size_t>(n) < pr.size() ? pr[static_cast<std::size_t>(n)] : Rational(0);
      },
      s, p.truncation);
}

RationalSeries second_recursion_single(const std::vector<Rational>& p, int s, int truncation) {
  return second_recursion_system(
      [&p](std::size_t, int n, const std::vector<RationalSeries>&) {
        return static_cast<std::size_t>(n) < p.size() ? p[static_cast<std::size_t>(n)] : Rational(0);
      },
      {s}, truncation)[0];
}

GammaTable first_recursion(const std::vector<RationalSeries>& gamma1, const std::vector<int>& s, int max_k,
                           std::vector<std::string> names) {
  if (gamma1.size() != s.size()) throw std::invalid_argument("gamma1 and exponents differ in residue count");
  const int n = gamma1.empty() ? 0 : gamma1.front().truncation();
  if (names.empty())
    for (std::size_t r = 0; r < s.size(); ++r) names.push_back("G" + std::to_string(r + 1));

  // beta(x)/x = sum_j |s_j| gamma^j_1(x).
  RationalSeries beta(n);
  for (std::size_t j = 0; j < s.size(); ++j) beta += Rational(std::abs(s[j])) * gamma1[j];

  GammaTable table(std::move(names), n);
  for (std::size_t r = 0; r < s.size(); ++r) {
    RationalSeries prev = gamma1[r];
    for (int j = 1; j <= n; ++j) table.set(r, 1, j, prev[j]);
    for (int k = 2; k <= std::min(max_k, n); ++k) {
      RationalSeries next = Rational(sign_of(s[r])) * (gamma1[r] * prev) - beta * x_ddx(prev);
      next = Rational(1, k) * next;
      for (int j = k; j <= n; ++j) table.set(r, k, j, next[j]);
      prev = std::move(next);
    }
  }
  return table;
}

bool phi3_fourth_order_check(const GammaTable& table) {
  const int n = table.truncation();
  RationalSeries rhs(n);
  if (n >= 1) rhs[1] = Rational(1, 6);
  rhs -= Rational(11, 3) * table.gamma_k(0, 2);
  rhs -= Rational(6) * table.gamma_k(0, 3);
  rhs -= Rational(4) * table.gamma_k(0, 4);
  return rhs == table.gamma_k(0, 1);
}

TheorySpec phi3_spec(int truncation, OperatorConvention convention) {
  const std::vector<Rational> poles{Rational(1), Rational(2), Rational(3)};
  return TheorySpec::single(2, laurent_from_poles(Rational(-1), poles, truncation), truncation, convention);
}

std::vector<RationalSeries> degenerate_system(const std::vector<Rational>& p1, int truncation) {
  return second_recursion_system(
      [&p1](std::size_t r, int n, const std::vector<RationalSeries>& g) -> Rational {
        const Rational p1n = static_cast<std::size_t>(n) <= p1.size() ? p1[static_cast<std::size_t>(n - 1)] : Rational(0);
        if (r == 0) return p1n;
        if (n == 1) return p1.empty() ? Rational(0) : p1[0];
        const Rational a = g[1][1];
        if (n == 2) return -4 * a * a;
        return -2 * a * g[0][n - 1];
      },
      {2, -1}, truncation);
}

}  // namespace dyson
