#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace psr {

// Exact arithmetic everywhere a probability or weight is involved.
// Doubles appear only in sample-size formulas, where rounding up is harmless.
using Rational = mpq_class;
using BigInt = mpz_class;

// Parses "5", "-3/4" or a decimal string such as "0.875" into an exact
// rational. Decimal strings convert exactly, with no binary-float detour.
Rational parse_rational(std::string_view text);

// "p/q", or just "p" when the denominator is 1. parse_rational inverts it.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

// num/den in canonical form. den must be nonzero.
Rational ratio(long num, long den);

// 2^n as an exact big integer.
BigInt pow2(std::uint64_t n);

}  // namespace psr
