#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "afflab/sidorenko.hpp"
#include "afflab/types.hpp"

namespace afflab {

/// Certified enclosure log2^(level)(x) in [lo, hi].
///
/// For level >= 1 we keep lo >= 64, i.e. log2^(level-1)(x) >= 2^64; this is
/// what lets additive perturbations at deeper levels be bounded by tiny
/// widenings.
struct LogForm {
    int level = 0;
    long double lo = 0;
    long double hi = 0;

    static LogForm point(long double v);
    LogForm normalized() const;
    /// b^x for a base with log2(b) in [lb_lo, lb_hi], lb_lo >= 1.
    static LogForm power(long double lb_lo, long double lb_hi, const LogForm& x);
    /// c * x for c >= 1.
    LogForm times(long double c) const;
    /// log_b(x) for log2(b) in [lb_lo, lb_hi]; nullopt when x may be <= 1.
    std::optional<LogForm> log_base(long double lb_lo, long double lb_hi) const;
};

/// bases[0]^(bases[1]^(...^top)); every base is at least 2.
struct Tower {
    std::vector<Rational> bases;
    BigInt top;
};

struct RealValue {
    long double value = 0;
    long double tolerance = 0;
};

struct NegInfinity {};

inline constexpr std::size_t kDefaultBitsCap = std::size_t{1} << 20;

/// A bound value: exact integer while it fits in bits_cap bits, otherwise a
/// tower normal form, a toleranced real, or a bare log-level enclosure.
class ExtendedNumber {
public:
    using Form = std::variant<BigInt, Tower, RealValue, LogForm, NegInfinity>;

    ExtendedNumber() : form_(BigInt(0)) {}
    static ExtendedNumber exact(BigInt v) { return ExtendedNumber(Form(std::move(v))); }
    static ExtendedNumber real(long double v, long double tol) { return ExtendedNumber(Form(RealValue{v, tol})); }
    static ExtendedNumber bounded(const LogForm& f);
    static ExtendedNumber neg_infinity() { return ExtendedNumber(Form(NegInfinity{})); }
    /// Materializes the integer part of the tower from the top down while the
    /// value stays within bits_cap bits.
    static ExtendedNumber tower(std::vector<Rational> bases, BigInt top,
                                std::size_t bits_cap = kDefaultBitsCap);

    const Form& form() const noexcept { return form_; }
    bool is_exact() const noexcept { return std::holds_alternative<BigInt>(form_); }
    bool is_neg_infinity() const noexcept { return std::holds_alternative<NegInfinity>(form_); }
    const BigInt* exact_value() const noexcept { return std::get_if<BigInt>(&form_); }
    std::string form_name() const;

    /// Enclosure of a positive value; nullopt for values <= 0 or -inf.
    std::optional<LogForm> log_form() const;
    /// Nearest long double, +inf when out of range.
    long double approx() const;
    std::string str() const;

private:
    explicit ExtendedNumber(Form f) : form_(std::move(f)) {}
    Form form_;
};

enum class Ordering { less, equal, greater, indistinguishable };
std::string to_string(Ordering o);

/// Certified comparison; indistinguishable when enclosures overlap.
Ordering compare(const ExtendedNumber& a, const ExtendedNumber& b);

/// log_b^(k)(x) with the -inf branch for nonpositive intermediate values.
ExtendedNumber iterated_log(const ExtendedNumber& x, const Rational& base, int k);

enum class BoundId {
    taylor_tower,
    diag_tower,
    nelson_nomoto,
    offdiag_f2,
    offdiag_f3,
    eq1_rhs,
    thm42_rhs,
    thm51_tower,
    thm51_recursion,
    thm63,
    sec7_delta,
    raff_diag,
    raff_offdiag,
};

std::string to_string(BoundId id);
BoundId parse_bound_id(const std::string& name);
std::vector<BoundId> all_bound_ids();
/// Parameter names each bound expects.
std::vector<std::string> bound_parameters(BoundId id);

/// How "tower of height h" is read: h occurrences of the base above the top
/// exponent, or h levels in total counting the top.
enum class HeightConvention { sigma_count, levels };

/// Named parameters; values are decimal or rational literals, lists are
/// comma separated ("ts" for diag_tower).
class BoundParams {
public:
    BoundParams() = default;
    BoundParams(std::initializer_list<std::pair<const std::string, std::string>> init)
        : values_(init) {}
    void set(const std::string& name, const std::string& value) { values_[name] = value; }
    void set(const std::string& name, long value) { values_[name] = std::to_string(value); }
    bool has(const std::string& name) const { return values_.count(name) > 0; }

    long get_int(const std::string& name) const;
    Rational get_rational(const std::string& name) const;
    std::vector<long> get_int_list(const std::string& name) const;
    const std::map<std::string, std::string>& values() const noexcept { return values_; }

private:
    std::map<std::string, std::string> values_;
};

struct BoundOptions {
    SidorenkoParams sidorenko;
    HeightConvention height = HeightConvention::sigma_count;
    std::size_t bits_cap = kDefaultBitsCap;
};

ExtendedNumber eval_bound(BoundId id, const BoundParams& params, const BoundOptions& options = {});

/// ceil(a / b) for positive b, in integers.
long ceil_div(long a, long b);

}  // namespace afflab
