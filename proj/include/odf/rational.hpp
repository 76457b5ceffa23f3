#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace odf {

/// Exact rational number. GMP keeps it in lowest terms with a positive
/// denominator once canonicalized; every constructor here canonicalizes.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long num, long den = 1);

/// Parses `int` or `int/posint` with an optional leading sign.
Rational parse_rational(std::string_view text);

/// Renders as `n` or `n/d`.
std::string to_string(const Rational& q);

int sign(const Rational& q);

Rational factorial(unsigned n);

/// Binomial coefficient as a rational; zero when k > n.
Rational binomial(unsigned n, unsigned k);

}  // namespace odf
