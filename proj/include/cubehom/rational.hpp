#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace cubehom
{
    using BigInt = mpz_class;
    using Rational = mpq_class;

    /// Parses "num/den", "num" or a plain decimal like "0.75" into a reduced rational.
    auto parse_rational(std::string_view text) -> Rational;

    /// Always "num/den", including integers ("3/1"), so reports have one exact format.
    auto to_fraction_string(const Rational & value) -> std::string;

    auto to_string(const BigInt & value) -> std::string;

    /// Decimal rendering with a fixed number of significant digits.
    auto to_decimal_string(const Rational & value, int digits = 12) -> std::string;

    auto to_double(const Rational & value) -> double;

    auto pow(const Rational & base, unsigned long exponent) -> Rational;
    auto pow(const BigInt & base, unsigned long exponent) -> BigInt;
}
