#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace fauto {

/// Exact rational scalar. gmpxx keeps results of arithmetic in lowest terms
/// with a positive denominator; values built from a (num, den) pair must go
/// through make_rational so the same holds for them.
using Rational = mpq_class;
using Integer = mpz_class;

Rational make_rational(long num, long den = 1);
Rational make_rational(const Integer& num, const Integer& den);

/// Accepts "p", "-p", "p/q" and "-p/q" (optional surrounding whitespace).
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form, always with an explicit denominator.
std::string to_pq_string(const Rational& x);

/// log|x| for x != 0, robust against values far outside the double range.
double log_abs(const Rational& x);
double log_abs(const Integer& x);

/// |x| as a decimal string with `digits` significant digits in scientific
/// notation ("d.ddd...e-XX"). Rounds half up on the last digit.
std::string to_decimal_string(const Rational& x, int digits);

Integer factorial(unsigned long n);
Integer pow_int(const Integer& base, unsigned long exp);
Rational pow_rational(const Rational& base, unsigned long exp);

/// x(x-1)...(x-len+1); the empty product for len == 0.
Rational falling_factorial(const Rational& x, int len);

inline int sign(const Rational& x) { return sgn(x); }

}  // namespace fauto
