#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace afflab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Integer encoding of a point of F_q^n: sum of digit[i] * q^i.
using Index = std::uint64_t;

/// Invalid arguments or a request outside the supported domain.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation would exceed its configured work budget.
class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, BigInt required)
        : std::runtime_error(what), required_(std::move(required)) {}
    const BigInt& required() const noexcept { return required_; }

private:
    BigInt required_;
};

/// An internal consistency check failed. Always a bug.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

#define AFFLAB_ENSURE(cond, msg)                                                    \
    do {                                                                            \
        if (!(cond))                                                                \
            throw ::afflab::InvariantViolation(std::string(msg) + " [" #cond "]"); \
    } while (0)

inline BigInt ipow(const BigInt& base, unsigned exp) {
    return boost::multiprecision::pow(base, exp);
}

inline std::string to_string(const BigInt& v) { return v.str(); }
std::string to_string(const Rational& v);

/// Parses a decimal literal such as "13.901" or "-2" or "7/3" exactly.
Rational parse_rational(const std::string& text);

long double to_long_double(const Rational& v);
long double to_long_double(const BigInt& v);

/// log2 of a positive big integer, accurate to ~1e-15 relative.
long double log2_big(const BigInt& v);

}  // namespace afflab
