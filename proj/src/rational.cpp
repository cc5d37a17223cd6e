#include <cubehom/error.hpp>
#include <cubehom/rational.hpp>

#include <cmath>
#include <cstdio>
#include <string>

namespace cubehom
{
    namespace
    {
        auto is_digits(std::string_view s) -> bool
        {
            if (s.empty())
                return false;
            for (char ch : s)
                if (ch < '0' || ch > '9')
                    return false;
            return true;
        }

        auto parse_integer(std::string_view s) -> BigInt
        {
            bool negative = false;
            if (! s.empty() && (s.front() == '-' || s.front() == '+')) {
                negative = s.front() == '-';
                s.remove_prefix(1);
            }
            if (! is_digits(s))
                throw InputError("not an integer: '" + std::string(s) + "'");
            BigInt result(std::string(s), 10);
            return negative ? BigInt(-result) : result;
        }
    }

    auto parse_rational(std::string_view text) -> Rational
    {
        while (! text.empty() && text.front() == ' ')
            text.remove_prefix(1);
        while (! text.empty() && text.back() == ' ')
            text.remove_suffix(1);
        if (text.empty())
            throw InputError("empty rational");

        Rational result;
        if (auto slash = text.find('/'); slash != std::string_view::npos) {
            BigInt den = parse_integer(text.substr(slash + 1));
            if (den == 0)
                throw InputError("zero denominator in '" + std::string(text) + "'");
            result = Rational(parse_integer(text.substr(0, slash)), den);
        }
        else if (auto dot = text.find('.'); dot != std::string_view::npos) {
            auto whole = text.substr(0, dot);
            auto frac = text.substr(dot + 1);
            if (! frac.empty() && ! is_digits(frac))
                throw InputError("bad decimal '" + std::string(text) + "'");
            bool negative = ! whole.empty() && whole.front() == '-';
            BigInt w = (whole.empty() || whole == "-" || whole == "+") ? BigInt(0) : parse_integer(whole);
            BigInt scale = 1;
            for (std::size_t i = 0; i < frac.size(); ++i)
                scale *= 10;
            BigInt f = frac.empty() ? BigInt(0) : BigInt(std::string(frac), 10);
            if (negative)
                f = -f;
            result = Rational(w * scale + f, scale);
        }
        else
            result = Rational(parse_integer(text), 1);

        result.canonicalize();
        return result;
    }

    auto to_fraction_string(const Rational & value) -> std::string
    {
        return value.get_num().get_str() + "/" + value.get_den().get_str();
    }

    auto to_string(const BigInt & value) -> std::string
    {
        return value.get_str();
    }

    auto to_decimal_string(const Rational & value, int digits) -> std::string
    {
        // mpf keeps this exact enough for reporting and locale-independent
        mpf_class f(value, 256);
        mp_exp_t exponent = 0;
        std::string mantissa = f.get_str(exponent, 10, static_cast<std::size_t>(digits));
        if (mantissa.empty() || mantissa == "0")
            return "0";

        bool negative = mantissa.front() == '-';
        if (negative)
            mantissa.erase(0, 1);

        std::string out;
        if (exponent <= 0)
            out = "0." + std::string(static_cast<std::size_t>(-exponent), '0') + mantissa;
        else if (static_cast<std::size_t>(exponent) >= mantissa.size())
            out = mantissa + std::string(static_cast<std::size_t>(exponent) - mantissa.size(), '0');
        else
            out = mantissa.substr(0, static_cast<std::size_t>(exponent)) + "." + mantissa.substr(static_cast<std::size_t>(exponent));
        return negative ? "-" + out : out;
    }

    auto to_double(const Rational & value) -> double
    {
        return value.get_d();
    }

    auto pow(const Rational & base, unsigned long exponent) -> Rational
    {
        BigInt num, den;
        mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
        mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
        Rational result(num, den);
        result.canonicalize();
        return result;
    }

    auto pow(const BigInt & base, unsigned long exponent) -> BigInt
    {
        BigInt result;
        mpz_pow_ui(result.get_mpz_t(), base.get_mpz_t(), exponent);
        return result;
    }
}
