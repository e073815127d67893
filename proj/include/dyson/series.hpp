#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "dyson/error.hpp"
#include "dyson/rational.hpp"

namespace dyson {

// Ring operations needed by TruncatedSeries. Specialized for every
// coefficient type used as a series coefficient.
template <typename Coeff>
struct RingTraits;

template <>
struct RingTraits<Rational> {
  static Rational zero() { return Rational(0); }
  static Rational one() { return Rational(1); }
  static bool is_zero(const Rational& c) { return sgn(c) == 0; }
  static Rational inverse(const Rational& c) {
    if (sgn(c) == 0) throw ZeroConstantTerm();
    return Rational(1) / c;
  }
};

/// Power series in x truncated at x^N, with coefficients in a commutative ring.
/// The truncation travels with the value; binary operations truncate to the
/// smaller of the two operands.
template <typename Coeff>
class TruncatedSeries {
 public:
  using Traits = RingTraits<Coeff>;

  explicit TruncatedSeries(int truncation = 0)
      : coeffs_(static_cast<std::size_t>(truncation) + 1, Traits::zero()) {
    assert(truncation >= 0);
  }

  explicit TruncatedSeries(std::vector<Coeff> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(Traits::zero());
  }

  static TruncatedSeries constant(Coeff c, int truncation) {
    TruncatedSeries out(truncation);
    out.coeffs_[0] = std::move(c);
    return out;
  }

  static TruncatedSeries one(int truncation) { return constant(Traits::one(), truncation); }

  int truncation() const { return static_cast<int>(coeffs_.size()) - 1; }

  const Coeff& operator[](int n) const { return coeffs_[static_cast<std::size_t>(n)]; }
  Coeff& operator[](int n) { return coeffs_[static_cast<std::size_t>(n)]; }

  std::span<const Coeff> coeffs() const& { return coeffs_; }
  std::vector<Coeff> coeffs() && { return std::move(coeffs_); }

  /// Lowest index with a nonzero coefficient, or truncation()+1 for zero.
  int valuation() const {
    for (int n = 0; n <= truncation(); ++n)
      if (!Traits::is_zero((*this)[n])) return n;
    return truncation() + 1;
  }

  TruncatedSeries truncated(int truncation) const {
    std::vector<Coeff> c(coeffs_.begin(),
                         coeffs_.begin() + std::min<std::ptrdiff_t>(truncation + 1, std::ssize(coeffs_)));
    c.resize(static_cast<std::size_t>(truncation) + 1, Traits::zero());
    return TruncatedSeries(std::move(c));
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.coeffs_ == b.coeffs_;
  }

  TruncatedSeries& operator+=(const TruncatedSeries& other) {
    shrink_to(other.truncation());
    for (int n = 0; n <= truncation(); ++n) (*this)[n] += other[n];
    return *this;
  }

  TruncatedSeries& operator-=(const TruncatedSeries& other) {
    shrink_to(other.truncation());
    for (int n = 0; n <= truncation(); ++n) (*this)[n] -= other[n];
    return *this;
  }

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }

  friend TruncatedSeries operator-(TruncatedSeries a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    const int n_max = std::min(a.truncation(), b.truncation());
    TruncatedSeries out(n_max);
    for (int i = 0; i <= n_max; ++i) {
      if (Traits::is_zero(a[i])) continue;
      for (int j = 0; i + j <= n_max; ++j) {
        if (Traits::is_zero(b[j])) continue;
        out[i + j] += a[i] * b[j];
      }
    }
    return out;
  }

  TruncatedSeries& operator*=(const TruncatedSeries& other) { return *this = *this * other; }

  friend TruncatedSeries operator*(const Rational& k, TruncatedSeries a) {
    for (auto& c : a.coeffs_) c = k * c;
    return a;
  }

 private:
  void shrink_to(int truncation) {
    if (truncation < this->truncation()) coeffs_.resize(static_cast<std::size_t>(truncation) + 1);
  }

  std::vector<Coeff> coeffs_;
};

/// 1/a by the triangular recurrence b_n = -a_0^{-1} sum_{k>=1} a_k b_{n-k}.
template <typename Coeff>
TruncatedSeries<Coeff> reciprocal(const TruncatedSeries<Coeff>& a) {
  using Traits = RingTraits<Coeff>;
  const int n_max = a.truncation();
  const Coeff inv0 = Traits::inverse(a[0]);
  TruncatedSeries<Coeff> b(n_max);
  b[0] = inv0;
  for (int n = 1; n <= n_max; ++n) {
    Coeff acc = Traits::zero();
    for (int k = 1; k <= n; ++k) {
      if (Traits::is_zero(a[k])) continue;
      acc += a[k] * b[n - k];
    }
    b[n] = -(inv0 * acc);
  }
  return b;
}

/// a^e; negative exponents go through reciprocal() and then a positive power.
template <typename Coeff>
TruncatedSeries<Coeff> pow(const TruncatedSeries<Coeff>& a, int e) {
  TruncatedSeries<Coeff> base = e < 0 ? reciprocal(a) : a;
  unsigned k = static_cast<unsigned>(e < 0 ? -static_cast<long>(e) : e);
  auto result = TruncatedSeries<Coeff>::one(a.truncation());
  while (k != 0) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k != 0) base *= base;
  }
  return result;
}

using RationalSeries = TruncatedSeries<Rational>;

/// x d/dx: coefficient n becomes n * a_n.
RationalSeries x_ddx(const RationalSeries& a);

RationalSeries make_series(std::initializer_list<Rational> coeffs);

// ---------------------------------------------------------------------------

/// Dense univariate polynomial with rational coefficients; trailing zeros are
/// trimmed so the zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  static Polynomial constant(const Rational& c);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  Rational coeff(int j) const;
  std::span<const Rational> coeffs() const& { return coeffs_; }
  std::vector<Rational> coeffs() && { return std::move(coeffs_); }

  /// Multiply by t^k.
  Polynomial shifted(int k) const;
  /// Drop every term of degree above `max_degree`.
  Polynomial truncated(int max_degree) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& k, const Polynomial& a);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

template <>
struct RingTraits<Polynomial> {
  static Polynomial zero() { return {}; }
  static Polynomial one() { return Polynomial::constant(Rational(1)); }
  static bool is_zero(const Polynomial& p) { return p.is_zero(); }
  static Polynomial inverse(const Polynomial& p) {
    if (p.degree() != 0) throw ZeroConstantTerm();
    return Polynomial::constant(RingTraits<Rational>::inverse(p.coeff(0)));
  }
};

/// Series in x whose x^n coefficient is a polynomial of degree <= n in a
/// second variable (L for Green functions, the derivative symbol for
/// insertion operators). Coefficient (n, j) multiplies x^n y^j.
class BivariateSeries {
 public:
  explicit BivariateSeries(int truncation = 0) : rows_(truncation) {}
  explicit BivariateSeries(TruncatedSeries<Polynomial> rows);

  static BivariateSeries one(int truncation);

  int truncation() const { return rows_.truncation(); }
  Rational at(int n, int j) const;
  /// Throws std::out_of_range if j > n or n > truncation().
  void set(int n, int j, const Rational& value);
  void add(int n, int j, const Rational& value);
  const Polynomial& row(int n) const { return rows_[n]; }
  const TruncatedSeries<Polynomial>& rows() const { return rows_; }

  /// The series in x multiplying y^j.
  RationalSeries column(int j) const;

  BivariateSeries truncated(int truncation) const { return BivariateSeries(rows_.truncated(truncation)); }

  friend BivariateSeries operator+(const BivariateSeries& a, const BivariateSeries& b) {
    return BivariateSeries(a.rows_ + b.rows_);
  }
  friend BivariateSeries operator-(const BivariateSeries& a, const BivariateSeries& b) {
    return BivariateSeries(a.rows_ - b.rows_);
  }
  friend BivariateSeries operator*(const BivariateSeries& a, const BivariateSeries& b) {
    return BivariateSeries(a.rows_ * b.rows_);
  }
  friend BivariateSeries operator*(const Rational& k, const BivariateSeries& a) {
    return BivariateSeries(k * a.rows_);
  }
  friend bool operator==(const BivariateSeries& a, const BivariateSeries& b) { return a.rows_ == b.rows_; }

  friend BivariateSeries pow(const BivariateSeries& a, int e) { return BivariateSeries(dyson::pow(a.rows_, e)); }

 private:
  TruncatedSeries<Polynomial> rows_;
};

// ---------------------------------------------------------------------------

/// Laurent coefficients f_{-1}, f_0, ..., f_M of a Mellin transform with a
/// simple pole at rho = 0.
class LaurentData {
 public:
  LaurentData() = default;
  /// coeffs[0] is f_{-1}.
  explicit LaurentData(std::vector<Rational> coeffs);

  int order() const { return static_cast<int>(coeffs_.size()) - 2; }
  /// f_j for -1 <= j <= order().
  const Rational& at(int j) const;
  const Rational& residue() const { return at(-1); }
  std::span<const Rational> coeffs() const& { return coeffs_; }
  std::vector<Rational> coeffs() && { return std::move(coeffs_); }

  LaurentData scaled(const Rational& k) const;

  friend bool operator==(const LaurentData&, const LaurentData&) = default;

 private:
  std::vector<Rational> coeffs_;
};

/// r / (rho (1 - rho)): every coefficient equals r.
LaurentData laurent_geometric(const Rational& r, int order);

/// scale / (rho * prod_i (p_i - rho)) expanded about rho = 0.
/// Throws PoleAtOrigin if some p_i is zero.
LaurentData laurent_from_poles(const Rational& scale, std::span<const Rational> poles, int order);

}  // namespace dyson
