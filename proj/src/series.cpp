#include "dyson/series.hpp"

#include <stdexcept>
#include <string>

namespace dyson {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  const auto first = s.find_first_not_of(" \t");
  const auto last = s.find_last_not_of(" \t");
  if (first == std::string::npos) throw std::invalid_argument("empty rational");
  s = s.substr(first, last - first + 1);
  const auto slash = s.find('/');
  auto valid_int = [](const std::string& t) {
    std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
    throw std::invalid_argument("malformed rational '" + s + "'");
  Integer p(num[0] == '+' ? num.substr(1) : num, 10);
  Integer q(den, 10);
  if (q == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double to_double(const Rational& value) { return value.get_d(); }

Rational factorial(unsigned n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

RationalSeries x_ddx(const RationalSeries& a) {
  RationalSeries out(a.truncation());
  for (int n = 1; n <= a.truncation(); ++n) out[n] = n * a[n];
  return out;
}

RationalSeries make_series(std::initializer_list<Rational> coeffs) {
  return RationalSeries(std::vector<Rational>(coeffs));
}

// --- Polynomial -------------------------------------------------------------

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(const Rational& c) { return Polynomial(std::vector<Rational>{c}); }

Rational Polynomial::coeff(int j) const {
  if (j < 0 || j > degree()) return Rational(0);
  return coeffs_[static_cast<std::size_t>(j)];
}

Polynomial Polynomial::shifted(int k) const {
  if (is_zero()) return {};
  std::vector<Rational> c(static_cast<std::size_t>(k), Rational(0));
  c.insert(c.end(), coeffs_.begin(), coeffs_.end());
  return Polynomial(std::move(c));
}

Polynomial Polynomial::truncated(int max_degree) const {
  if (degree() <= max_degree) return *this;
  return Polynomial(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + max_degree + 1));
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), Rational(0));
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  trim();
  return *this;
}

Polynomial operator-(Polynomial a) {
  for (auto& c : a.coeffs_) c = -c;
  return a;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.coeffs_.size() + b.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (sgn(a.coeffs_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(c));
}

Polynomial operator*(const Rational& k, const Polynomial& a) {
  if (sgn(k) == 0) return {};
  Polynomial out = a;
  for (auto& c : out.coeffs_) c *= k;
  return out;
}

void Polynomial::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

// --- BivariateSeries --------------------------------------------------------

BivariateSeries::BivariateSeries(TruncatedSeries<Polynomial> rows) : rows_(std::move(rows)) {
  for (int n = 0; n <= rows_.truncation(); ++n)
    if (rows_[n].degree() > n) throw std::logic_error("bivariate series is not triangular");
}

BivariateSeries BivariateSeries::one(int truncation) {
  return BivariateSeries(TruncatedSeries<Polynomial>::one(truncation));
}

Rational BivariateSeries::at(int n, int j) const {
  if (n < 0 || n > truncation()) return Rational(0);
  return rows_[n].coeff(j);
}

void BivariateSeries::set(int n, int j, const Rational& value) {
  if (n < 0 || n > truncation() || j < 0 || j > n)
    throw std::out_of_range("bivariate index (" + std::to_string(n) + "," + std::to_string(j) + ")");
  std::vector<Rational> c(rows_[n].coeffs().begin(), rows_[n].coeffs().end());
  if (static_cast<int>(c.size()) <= j) c.resize(static_cast<std::size_t>(j) + 1, Rational(0));
  c[static_cast<std::size_t>(j)] = value;
  rows_[n] = Polynomial(std::move(c));
}

void BivariateSeries::add(int n, int j, const Rational& value) { set(n, j, at(n, j) + value); }

RationalSeries BivariateSeries::column(int j) const {
  RationalSeries out(truncation());
  for (int n = 0; n <= truncation(); ++n) out[n] = rows_[n].coeff(j);
  return out;
}

// --- LaurentData ------------------------------------------------------------

LaurentData::LaurentData(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) coeffs_.push_back(Rational(0));
}

const Rational& LaurentData::at(int j) const {
  if (j < -1 || j > order()) throw InsufficientLaurentOrder(j, order());
  return coeffs_[static_cast<std::size_t>(j + 1)];
}

LaurentData LaurentData::scaled(const Rational& k) const {
  std::vector<Rational> c = coeffs_;
  for (auto& v : c) v *= k;
  return LaurentData(std::move(c));
}

LaurentData laurent_geometric(const Rational& r, int order) {
  return LaurentData(std::vector<Rational>(static_cast<std::size_t>(order) + 2, r));
}

LaurentData laurent_from_poles(const Rational& scale, std::span<const Rational> poles, int order) {
  // rho * F(rho) = scale * prod 1/(p - rho), each factor sum_j rho^j / p^{j+1}.
  const int n = order + 1;
  RationalSeries acc = RationalSeries::constant(scale, n);
  for (const auto& p : poles) {
    if (sgn(p) == 0) throw PoleAtOrigin();
    RationalSeries factor(n);
    Rational inv = Rational(1) / p;
    Rational term = inv;
    for (int j = 0; j <= n; ++j) {
      factor[j] = term;
      term *= inv;
    }
    acc *= factor;
  }
  return LaurentData(std::vector<Rational>(acc.coeffs().begin(), acc.coeffs().end()));
}

}  // namespace dyson
