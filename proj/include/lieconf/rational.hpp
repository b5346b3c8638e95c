#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace lieconf {

// Exact scalars. mpq_class keeps values in lowest terms with positive
// denominator once canonicalized; every helper below returns canonical values.
using Integer = mpz_class;
using Rational = mpq_class;

Rational make_rational(long num, long den = 1);

/// Parses "p", "-p", or "p/q" (q > 0 after canonicalization).
Rational rational_from_string(std::string_view text);

/// Canonical rendering: "p" or "p/q".
std::string to_string(const Rational& q);

Integer binomial(unsigned long n, unsigned long k);
Integer factorial(unsigned long n);

/// n (n-1) ... (n-e+1); zero when e > n.
Integer falling_factorial(unsigned long n, unsigned long e);

Rational rational_pow(const Rational& base, unsigned long exp);

bool is_integer(const Rational& q);

} // namespace lieconf
