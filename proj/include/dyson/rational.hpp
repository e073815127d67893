#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace dyson {

/// Exact rational backed by GMP. Arithmetic results are always canonical
/// (lowest terms, positive denominator).
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on malformed
/// input or a zero denominator.
Rational parse_rational(std::string_view text);

/// "p/q", with "/q" omitted when q == 1.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

Rational factorial(unsigned n);

inline int sign_of(int s) { return s < 0 ? -1 : 1; }

}  // namespace dyson
