#pragma once

#include <optional>
#include <string>

#include "afflab/config.hpp"
#include "afflab/hom.hpp"
#include "afflab/point_set.hpp"

namespace afflab {

/// Exponent C of the weakly-Sidorenko inequality, kept as an exact rational.
/// Integer exponents get exact margins; others are evaluated in log domain.
class Exponent {
public:
    Exponent() = default;
    Exponent(long v) : value_(v) {}
    explicit Exponent(Rational v) : value_(std::move(v)) {}
    static Exponent parse(const std::string& text) { return Exponent(parse_rational(text)); }

    const Rational& value() const noexcept { return value_; }
    bool is_integer() const { return denominator(value_) == 1; }
    long double approx() const { return to_long_double(value_); }
    std::string str() const { return to_string(value_); }

private:
    Rational value_ = 0;
};

/// sigma_2 = 2, sigma_3 = C_0 (configurable, default 13.901).
struct SidorenkoParams {
    Rational sigma3 = Rational(13901, 1000);
    static SidorenkoParams from_environment();  // honours AFFLAB_SIGMA3
    Rational sigma(int q) const;
};

inline constexpr long double kMarginTolerance = 1e-9L;

struct Margin {
    long double value = 0;          // hom - alpha^C N^r
    std::optional<Rational> exact;  // set for integer C
    long double scale = 1;          // N^r, the tolerance reference

    bool negative() const;  // strictly below -tolerance (exact: < 0)
    bool operator<(const Margin& o) const;
};

Margin margin(const AffineConfiguration& b, const PointSet& a, const Exponent& c,
              const BigInt& budget = kDefaultWorkBudget);
/// Margin from a known hom count.
Margin margin_from_count(const BigInt& hom, std::size_t set_size, int q, int n, int r,
                         const Exponent& c);

/// ln(hom / N^r) / ln(alpha); 0 when alpha is 0 or 1.
long double required_c(const AffineConfiguration& b, const PointSet& a,
                       const BigInt& budget = kDefaultWorkBudget);
long double required_c_from_count(const BigInt& hom, std::size_t set_size, int q, int n, int r);

enum class VerdictStatus { verified, counterexample, inconclusive };
std::string to_string(VerdictStatus s);

struct SidorenkoVerdict {
    VerdictStatus status = VerdictStatus::inconclusive;
    std::optional<PointSet> witness;
    Margin margin;  // worst observed
    std::optional<long double> required_c;
    int n_checked = 0;
    BigInt subsets_examined = 0;
    bool boundary = false;  // verified only within tolerance
    std::string note;
};

struct SearchBudget {
    BigInt work = kDefaultWorkBudget;  // membership tests
    std::uint64_t seed = 0;
};

/// Checks the inequality on every A subset of F_q^n.
SidorenkoVerdict verify_exhaustive(const AffineConfiguration& b, const Exponent& c, int n,
                                   const SearchBudget& budget = {});

/// Maximises required_c over a seeded portfolio of hosts in F_q^n.
SidorenkoVerdict adversary_search(const AffineConfiguration& b, int n,
                                  const SearchBudget& budget = {});

struct SupersaturationReport {
    bool conditional = true;  // factor not verified at this n
    std::size_t set_size = 0;
    BigInt sets_tested = 0;
    bool exhaustive = false;
    bool all_exceed = true;
    long double min_slack = 0;  // copies - bound
    std::optional<PointSet> worst;
    bool implies_copy = false;  // prefactor <= 0 ... see implementation
    bool copy_implication_ok = true;
};

SupersaturationReport supersaturation_check(const AffineConfiguration& b, const Exponent& c,
                                            int n, long double d, std::uint64_t samples = 100,
                                            const SearchBudget& budget = {});

struct ProductCheckReport {
    bool preconditions_met = false;
    std::string precondition_note;
    Exponent product_exponent;
    BigInt sets_tested = 0;
    bool exhaustive = false;
    bool violated = false;
    Margin worst;
    std::optional<PointSet> worst_set;
    bool decomposition_ok = true;  // hom(B1 x B2, A) = sum_v hom(B1, A_v)
};

ProductCheckReport product_sidorenko_check(const AffineConfiguration& b1, const Exponent& c1,
                                           const AffineConfiguration& b2, const Exponent& c2,
                                           int n, std::uint64_t samples, std::uint64_t seed,
                                           const SearchBudget& budget = {});

/// sum over v of hom(B1, A_v), A_v = { z : z + span_B2(v) in A }.
BigInt product_hom_by_decomposition(const AffineConfiguration& b1,
                                    const AffineConfiguration& b2, const PointSet& a,
                                    const BigInt& budget = kDefaultWorkBudget);

}  // namespace afflab
