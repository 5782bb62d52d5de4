#include "afflab/types.hpp"

#include <cmath>

namespace afflab {

std::string to_string(const Rational& v) {
    if (denominator(v) == 1) return numerator(v).str();
    return numerator(v).str() + "/" + denominator(v).str();
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw DomainError("empty number");
    const auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            const BigInt num(text.substr(0, slash));
            const BigInt den(text.substr(slash + 1));
            if (den == 0) throw DomainError("zero denominator in '" + text + "'");
            return Rational(num, den);
        }
        std::string digits = text;
        bool negative = false;
        if (digits[0] == '-' || digits[0] == '+') {
            negative = digits[0] == '-';
            digits.erase(0, 1);
        }
        BigInt scale = 1;
        const auto dot = digits.find('.');
        if (dot != std::string::npos) {
            const std::string frac = digits.substr(dot + 1);
            digits = digits.substr(0, dot) + frac;
            scale = ipow(BigInt(10), static_cast<unsigned>(frac.size()));
        }
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw DomainError("not a number: '" + text + "'");
        Rational r(BigInt(digits), scale);
        return negative ? Rational(-r) : r;
    } catch (const std::runtime_error&) {
        throw DomainError("not a number: '" + text + "'");
    }
}

long double log2_big(const BigInt& v) {
    if (v <= 0) throw DomainError("log2 of a nonpositive integer");
    const std::size_t msb = boost::multiprecision::msb(v);
    if (msb < 64) return std::log2(static_cast<long double>(v.convert_to<std::uint64_t>()));
    const std::size_t shift = msb - 63;
    const auto top = static_cast<std::uint64_t>(v >> shift);
    return std::log2(static_cast<long double>(top)) + static_cast<long double>(shift);
}

long double to_long_double(const BigInt& v) {
    if (v == 0) return 0;
    const long double l2 = log2_big(abs(v));
    if (l2 > 16000) return v > 0 ? HUGE_VALL : -HUGE_VALL;
    if (l2 < 63) return static_cast<long double>(v.convert_to<long long>());
    const long double mag = std::exp2(l2);
    return v > 0 ? mag : -mag;
}

long double to_long_double(const Rational& v) {
    const BigInt& num = numerator(v);
    const BigInt& den = denominator(v);
    if (num == 0) return 0;
    const long double l2 = log2_big(abs(num)) - log2_big(den);
    if (boost::multiprecision::msb(abs(num)) < 63 && boost::multiprecision::msb(den) < 63)
        return static_cast<long double>(num.convert_to<long long>()) /
               static_cast<long double>(den.convert_to<long long>());
    if (l2 > 16000) return num > 0 ? HUGE_VALL : -HUGE_VALL;
    const long double mag = std::exp2(l2);
    return num > 0 ? mag : -mag;
}

}  // namespace afflab
