#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "segmarket/error.hpp"

namespace segmarket {

// Expression templates are disabled so that `auto` always yields a value.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

/// Canonical lowest-terms text: "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& value) { return value.str(); }

inline double to_double(const Rational& value) { return value.convert_to<double>(); }

namespace detail {

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

inline Integer pow10(unsigned n) {
    Integer r = 1;
    for (unsigned i = 0; i < n; ++i) r *= 10;
    return r;
}

[[noreturn]] inline void bad_rational(std::string_view text) {
    throw Error(ErrorCode::ParseError, "cannot parse '" + std::string(text) + "' as an exact rational");
}

/// Base-10 digits only; leading zeros would otherwise select octal.
inline Integer decimal_integer(std::string_view digits) {
    while (digits.size() > 1 && digits.front() == '0') digits.remove_prefix(1);
    return Integer{std::string(digits)};
}

// [+-]digits[.digits][(e|E)[+-]digits]
inline Rational parse_decimal(std::string_view text, std::string_view original) {
    bool negative = false;
    if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_part = text.substr(e + 1);
        text = text.substr(0, e);
        bool exp_negative = false;
        if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
            exp_negative = exp_part.front() == '-';
            exp_part.remove_prefix(1);
        }
        if (!all_digits(exp_part) || exp_part.size() > 6) bad_rational(original);
        exponent = std::stol(std::string(exp_part));
        if (exp_negative) exponent = -exponent;
    }
    std::string_view int_part = text;
    std::string_view frac_part;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        int_part = text.substr(0, dot);
        frac_part = text.substr(dot + 1);
        if (!frac_part.empty() && !all_digits(frac_part)) bad_rational(original);
    }
    if (int_part.empty() && frac_part.empty()) bad_rational(original);
    if (!int_part.empty() && !all_digits(int_part)) bad_rational(original);

    const Integer digits = decimal_integer(std::string(int_part) + std::string(frac_part));
    Rational value(digits, pow10(static_cast<unsigned>(frac_part.size())));
    if (exponent > 0) value *= Rational(pow10(static_cast<unsigned>(exponent)));
    if (exponent < 0) value /= Rational(pow10(static_cast<unsigned>(-exponent)));
    return negative ? Rational(-value) : value;
}

}  // namespace detail

/// Parses "p/q", integers, and finite decimals ("0.3", "-1.5e-2") exactly.
inline Rational parse_rational(std::string_view text) {
    std::string_view original = text;
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) detail::bad_rational(original);

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::string_view num = text.substr(0, slash);
        std::string_view den = text.substr(slash + 1);
        bool negative = false;
        if (!num.empty() && (num.front() == '+' || num.front() == '-')) {
            negative = num.front() == '-';
            num.remove_prefix(1);
        }
        if (!detail::all_digits(num) || !detail::all_digits(den)) detail::bad_rational(original);
        const Integer d = detail::decimal_integer(den);
        if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(original) + "'");
        Rational value(detail::decimal_integer(num), d);
        return negative ? Rational(-value) : value;
    }
    return detail::parse_decimal(text, original);
}

}  // namespace segmarket
