#pragma once

#include <gmpxx.h>

#include <string>

namespace zagreb {

/// Exact rational; always kept canonical (den > 0, gcd(num, den) = 1).
using Rational = mpq_class;

/// Mantissa bits of the floating regime of the moment engine.
inline constexpr mp_bitcnt_t kFloatRegimeBits = 128;
/// Mantissa bits used for skewness and other final float evaluations.
inline constexpr mp_bitcnt_t kEvaluationBits = 256;

/// Canonical p/q. Denominators of 1 are written ("2/1") so that exact
/// columns have one uniform shape.
std::string to_fraction_string(const Rational& q);

/// Inverse of to_fraction_string; also accepts a bare integer.
Rational parse_fraction(const std::string& text);

/// Decimal with `digits` significant digits.
std::string to_decimal_string(const mpf_class& value, int digits);

double to_double(const Rational& q);

}  // namespace zagreb
