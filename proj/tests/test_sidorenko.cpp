#include <doctest.h>

#include <cmath>

#include "afflab/oracle.hpp"
#include "afflab/sidorenko.hpp"
#include "helpers.hpp"

using namespace afflab;

namespace {

PointSet set_of(int q, int n, std::vector<Index> pts) { return PointSet::from_indices(q, n, pts); }

// ln(hom / N^r) / ln(alpha) straight from the oracle count.
long double oracle_required_c(const AffineConfiguration& b, const PointSet& a) {
    const long double n_pts = static_cast<long double>(a.universe());
    const long double alpha = a.size() / n_pts;
    if (a.size() == 0 || alpha == 1) return 0;
    const long double hom = to_long_double(oracle::hom_count(b, a));
    return (std::log(hom) - b.rank_affine() * std::log(n_pts)) / std::log(alpha);
}

}  // namespace

TEST_CASE("margins at small hosts") {
    const auto line2 = make_cube(2, 1);
    const auto line3 = make_cube(3, 1);
    // Full space: hom = N^r and alpha = 1.
    const PointSet full = PointSet::from_mask(3, 2, (1u << 9) - 1);
    CHECK(margin(line3, full, Exponent::parse("13.901")).value == doctest::Approx(0));
    CHECK(*margin(line2, PointSet::from_mask(2, 2, 15), 2).exact == 0);

    // F_2^1 with C = 2 is an identity: hom = |A|^2.
    for (std::uint64_t mask = 0; mask < 16; ++mask) {
        const auto m = margin(line2, PointSet::from_mask(2, 2, mask), 2);
        REQUIRE(m.exact);
        CHECK(*m.exact == 0);
    }

    const auto m = margin(line3, set_of(3, 1, {0, 1}), Exponent::parse("13.901"));
    CHECK_FALSE(m.exact.has_value());
    const long double expect = 2 - std::pow(2.0L / 3, 13.901L) * 9;
    CHECK(m.value == doctest::Approx(static_cast<double>(expect)).epsilon(1e-12));
    CHECK(m.value == doctest::Approx(1.967).epsilon(1e-3));
    CHECK_FALSE(m.negative());
}

TEST_CASE("required exponent") {
    CHECK(required_c(make_cube(2, 1), set_of(2, 2, {0, 3})) == doctest::Approx(2));
    const auto line3 = make_cube(3, 1);
    CHECK(required_c(line3, set_of(3, 1, {0, 1})) == doctest::Approx(std::log(2.0 / 9) / std::log(2.0 / 3)));
    CHECK(required_c(line3, set_of(3, 1, {0, 1})) == doctest::Approx(3.7095).epsilon(1e-4));
    // (0,0), (1,0), (0,1), (1,1): a 4-cap, so only the 4 constant maps.
    const auto cap = set_of(3, 2, {0, 1, 3, 4});
    CHECK(oracle::hom_count(line3, cap) == 4);
    CHECK(required_c(line3, cap) == doctest::Approx(std::log(4.0 / 81) / std::log(4.0 / 9)));
    CHECK(required_c(line3, PointSet(3, 2)) == 0);
}

TEST_CASE("exhaustive verification") {
    const auto a = verify_exhaustive(make_cube(2, 1), 2, 3);
    CHECK(a.status == VerdictStatus::verified);
    CHECK(a.subsets_examined == 256);
    const auto b = verify_exhaustive(make_cube(2, 2), 4, 3);
    CHECK(b.status == VerdictStatus::verified);

    const auto c = verify_exhaustive(make_cube(3, 1), 2, 1);
    CHECK(c.status == VerdictStatus::counterexample);
    REQUIRE(c.witness);
    CHECK(*c.witness == set_of(3, 1, {0, 1}));
    REQUIRE(c.margin.exact);
    CHECK(*c.margin.exact == -2);

    // A budget too small names the subset count.
    SearchBudget tiny;
    tiny.work = 10;
    CHECK_THROWS_WITH_AS(verify_exhaustive(make_cube(2, 2), 4, 3, tiny), doctest::Contains("256 subsets"),
                         BudgetExceeded);
}

TEST_CASE("adversary search") {
    const auto a = adversary_search(make_cube(2, 1), 3);
    REQUIRE(a.required_c);
    CHECK(*a.required_c == doctest::Approx(2));

    const auto line3 = make_cube(3, 1);
    const auto b = adversary_search(line3, 1);
    REQUIRE(b.witness);
    CHECK(*b.witness == set_of(3, 1, {0, 1}));
    CHECK(*b.required_c == doctest::Approx(std::log(2.0 / 9) / std::log(2.0 / 3)));

    // F_3^2 has 512 subsets; the adversary must find the true maximum.
    long double best = 0;
    for (std::uint64_t mask = 0; mask < 512; ++mask)
        best = std::max(best, oracle_required_c(line3, PointSet::from_mask(3, 2, mask)));
    const auto c = adversary_search(line3, 2);
    REQUIRE(c.required_c);
    CHECK(static_cast<double>(*c.required_c) == doctest::Approx(static_cast<double>(best)).epsilon(1e-12));
    REQUIRE(c.witness);
    CHECK(oracle_required_c(line3, *c.witness) == doctest::Approx(static_cast<double>(best)).epsilon(1e-12));
}

TEST_CASE("verification at the adversarial exponent") {
    const auto b = make_cube(2, 2);
    long double best = 0;
    for (std::uint64_t mask = 0; mask < 256; ++mask)
        best = std::max(best, oracle_required_c(b, PointSet::from_mask(2, 3, mask)));
    char text[64];
    std::snprintf(text, sizeof text, "%.25Lf", best);
    const auto v = verify_exhaustive(b, Exponent::parse(text), 3);
    CHECK(v.status == VerdictStatus::verified);
    // Just below the maximum a counterexample appears.
    std::snprintf(text, sizeof text, "%.25Lf", best - 0.01L);
    CHECK(verify_exhaustive(b, Exponent::parse(text), 3).status == VerdictStatus::counterexample);
}

TEST_CASE("margin is nondecreasing in the exponent") {
    CounterRng rng(31, 4);
    const auto line3 = make_cube(3, 1);
    for (int round = 0; round < 30; ++round) {
        const PointSet a = testing_helpers::random_set(rng, 3, 2, 0.5);
        long double prev = -1e300L;
        for (const char* c : {"1", "2", "2.5", "3.7", "6", "13.901", "20"}) {
            const long double v = margin(line3, a, Exponent::parse(c)).value;
            CHECK(v >= prev - 1e-9L);
            prev = v;
        }
    }
}

TEST_CASE("supersaturation") {
    const auto s = supersaturation_check(make_cube(2, 1), 2, 3, 2);
    CHECK(s.set_size == 2);
    CHECK(s.all_exceed);
    CHECK(s.exhaustive);
    CHECK(s.sets_tested == 28);
    CHECK_FALSE(s.conditional);

    // Large D: the bound is positive, so every tested set holds a copy.
    const auto big = supersaturation_check(make_cube(2, 1), 2, 3, 3);
    CHECK(big.implies_copy);
    CHECK(big.copy_implication_ok);
    CHECK(big.all_exceed);

    const auto p = supersaturation_check(make_cube(2, 2), 4, 4, 2, 100);
    CHECK(p.set_size == 8);
    CHECK(p.all_exceed);
    CHECK(p.min_slack > 0);
    REQUIRE(p.worst);
    CHECK(oracle::nondegenerate_hom_count(make_cube(2, 2), *p.worst) > 0);
}

TEST_CASE("product configurations") {
    const auto line2 = make_cube(2, 1);
    const auto r = product_sidorenko_check(line2, 2, line2, 2, 3, 300, 5);
    CHECK(r.preconditions_met);
    CHECK(r.product_exponent.value() == 4);
    CHECK_FALSE(r.violated);
    CHECK(r.decomposition_ok);
    CHECK(r.exhaustive);

    // The decomposition against the direct oracle count of the product.
    CounterRng rng(8, 1);
    const auto line3 = make_cube(3, 1);
    const auto prod = product(line3, line3);
    for (int i = 0; i < 20; ++i) {
        const PointSet a = testing_helpers::random_set(rng, 3, 2, 0.6);
        CHECK(product_hom_by_decomposition(line3, line3, a) == oracle::hom_count(prod, a));
    }
}
