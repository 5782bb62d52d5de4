#include <doctest.h>

#include "afflab/extremal.hpp"
#include "afflab/hom.hpp"
#include "afflab/oracle.hpp"
#include "afflab/parallel.hpp"
#include "helpers.hpp"

using namespace afflab;
using testing_helpers::random_config;
using testing_helpers::random_set;

namespace {

SearchReport exact(int q, int n, std::vector<AffineConfiguration> family, bool symmetry = true) {
    ExtremalQuery query;
    query.q = q;
    query.n = n;
    query.family = std::move(family);
    query.symmetry = symmetry;
    return ex_aff(query);
}

void check_witness(const std::vector<AffineConfiguration>& family, const SearchReport& r) {
    REQUIRE(r.witness.has_value());
    CHECK(static_cast<long>(r.witness->size()) == *r.value);
    for (const auto& b : family) CHECK(oracle::is_free(b, *r.witness));
}

}  // namespace

TEST_CASE("cap sets in F_3^1 and F_3^2") {
    const std::vector<AffineConfiguration> line{make_cube(3, 1)};
    const auto one = exact(3, 1, line);
    CHECK(*one.value == 2);
    CHECK(one.status == SearchStatus::complete);
    check_witness(line, one);
    const auto two = exact(3, 2, line);
    CHECK(*two.value == 4);
    check_witness(line, two);
    CHECK(ex_aff_brute_force(line, 3, 1) == 2);
    CHECK(ex_aff_brute_force(line, 3, 2) == 4);
    CHECK(*exact(3, 2, line, false).value == 4);
}

TEST_CASE("the cap set in F_3^3 has 9 points") {
    const std::vector<AffineConfiguration> line{make_cube(3, 1)};
    const auto three = exact(3, 3, line);
    CHECK(*three.value == 9);
    check_witness(line, three);
    ExtremalQuery q;
    q.q = 3;
    q.n = 3;
    q.family = line;
    q.mode = ExtremalQuery::Mode::decision;
    q.target = 10;
    q.symmetry = false;
    const auto ten = ex_aff(q);
    CHECK(ten.status == SearchStatus::complete);
    CHECK_FALSE(ten.value.has_value());
}

TEST_CASE("trivial families") {
    // Any two points form a copy of F_2^1.
    const std::vector<AffineConfiguration> pair{make_cube(2, 1)};
    CHECK(*exact(2, 3, pair).value == 1);
    const std::vector<AffineConfiguration> point{AffineConfiguration(2, 1, {{1}})};
    const auto none = exact(2, 3, point);
    CHECK(*none.value == 0);
    CHECK(none.witness->empty());
    // F_2^2 in F_2^2: three of the four points.
    CHECK(*exact(2, 2, {make_cube(2, 2)}).value == 3);
}

TEST_CASE("branch and bound agrees with full subset enumeration") {
    CounterRng rng(2024, 5);
    int checked = 0;
    for (int round = 0; round < 60; ++round) {
        const int q = round % 3 == 0 ? 3 : 2;
        const int n = q == 3 ? 1 + static_cast<int>(rng.below(2)) : 1 + static_cast<int>(rng.below(4));
        std::vector<AffineConfiguration> family;
        const int members = 1 + static_cast<int>(rng.below(2));
        for (int i = 0; i < members; ++i) family.push_back(random_config(rng, q, 1 + static_cast<int>(rng.below(3)), 5));
        const long expect = ex_aff_brute_force(family, q, n);
        const auto sym = exact(q, n, family, true);
        const auto plain = exact(q, n, family, false);
        INFO("q=", q, " n=", n, " round=", round);
        CHECK(*sym.value == expect);
        CHECK(*plain.value == expect);
        check_witness(family, sym);
        check_witness(family, plain);
        ++checked;
    }
    CHECK(checked == 60);
}

TEST_CASE("witnesses do not depend on the thread count") {
    const std::vector<AffineConfiguration> fam{make_cube(2, 2)};
    set_thread_count(1);
    const auto a = exact(2, 4, fam);
    set_thread_count(4);
    const auto b = exact(2, 4, fam);
    set_thread_count(0);
    CHECK(*a.value == *b.value);
    CHECK(*a.witness == *b.witness);
    check_witness(fam, a);
}

TEST_CASE("decision and lower-bound modes") {
    ExtremalQuery q;
    q.q = 3;
    q.n = 2;
    q.family = {make_cube(3, 1)};
    q.mode = ExtremalQuery::Mode::decision;
    q.target = 4;
    const auto yes = ex_aff(q);
    CHECK(yes.value == 4);
    REQUIRE(yes.witness);
    CHECK(oracle::is_free(q.family[0], *yes.witness));
    q.target = 5;
    const auto no = ex_aff(q);
    CHECK_FALSE(no.value.has_value());
    CHECK(no.status == SearchStatus::complete);
    q.node_budget = 3;
    const auto cut = ex_aff(q);
    CHECK(cut.status == SearchStatus::incomplete);

    q.mode = ExtremalQuery::Mode::lower_only;
    q.node_budget = 1 << 20;
    q.seed = 7;
    const auto low = ex_aff(q);
    CHECK(low.status == SearchStatus::incomplete);
    CHECK(*low.value <= 4);
    CHECK(*low.value >= 2);
    CHECK(oracle::is_free(q.family[0], *low.witness));
    CHECK(*ex_aff(q).witness == *low.witness);
}

TEST_CASE("exhausted exact search reports incomplete") {
    ExtremalQuery q;
    q.q = 2;
    q.n = 4;
    q.family = {make_cube(2, 2)};
    q.node_budget = 10;
    const auto r = ex_aff(q);
    CHECK(r.status == SearchStatus::incomplete);
    CHECK_FALSE(r.witness.has_value());
}

TEST_CASE("computed extremal numbers sit below the closed-form bounds") {
    for (int n = 1; n <= 2; ++n) {
        const long v = *exact(3, n, {make_cube(3, 1)}).value;
        const auto rep = check_bound_formulas(3, 1, n, v, Rational(13901, 1000));
        CHECK(rep.below_thm42);
        CHECK(rep.eq1_applicable);
        CHECK(rep.below_eq1);
    }
    for (int n = 2; n <= 4; ++n) {
        const long v = *exact(2, n, {make_cube(2, 2)}).value;
        const auto rep = check_bound_formulas(2, 2, n, v, 2);
        CHECK(rep.below_thm42);
        CHECK(rep.below_eq1);
    }
    CHECK_FALSE(check_bound_formulas(2, 3, 2, 3, 2).eq1_applicable);
}

TEST_CASE("pigeonhole extraction") {
    CounterRng rng(99, 2);
    for (int round = 0; round < 40; ++round) {
        const int q = round % 2 == 0 ? 2 : 3;
        const int n = q == 2 ? 3 : 2;
        const auto b = random_config(rng, q, 2, 4);
        const PointSet a = random_set(rng, q, n, 0.6);
        const int r = b.rank_affine();
        if (r - 1 > n) continue;
        BigInt nondeg = oracle::nondegenerate_hom_count(b, a);
        if (nondeg == 0) {
            CHECK_THROWS_AS(extract_subconfig(b, a), DomainError);
            continue;
        }
        const auto ex = extract_subconfig(b, a);
        CHECK(ex.nondegenerate == nondeg);
        CHECK(ex.extracted.size() == ex.s_size);
        CHECK(ex.extracted.dim() == n - r + 1);
        const BigInt denom = ipow(BigInt(q), static_cast<unsigned>(r - 1)) * ipow(BigInt(a.universe()), static_cast<unsigned>(r - 1));
        CHECK(BigInt(ex.s_size) * denom >= nondeg);
        CHECK(linearly_independent(a.space(), ex.u));
        // Each extracted point maps back to a z whose span of B lies in A.
        const VectorSpace& sp = a.space();
        ex.extracted.for_each([&](Index w) {
            Index z = ex.complement_space.offset;
            const auto digits = ex.extracted.space().digits(w);
            for (std::size_t k = 0; k < digits.size(); ++k) z = sp.axpy(z, digits[k], ex.complement_space.basis[k]);
            CHECK(span_of(b, sp, z, ex.u).is_subset_of(a));
        });
    }
    // Rank one: the host set itself.
    const PointSet a = PointSet::from_indices(2, 2, std::vector<Index>{1, 2});
    const auto one = extract_subconfig(AffineConfiguration(2, 1, {{1}}), a);
    CHECK(one.extracted == a);
}
