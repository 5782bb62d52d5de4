#include <doctest.h>

#include "afflab/oracle.hpp"
#include "afflab/parallel.hpp"
#include "afflab/ramsey.hpp"
#include "afflab/space.hpp"
#include "afflab/subspace.hpp"

using namespace afflab;

namespace {

int ramsey(int q, std::vector<int> targets, int n_max = 0) {
    if (n_max == 0) n_max = q == 2 ? 5 : 3;
    RamseyQuery query;
    query.q = q;
    query.targets = std::move(targets);
    query.n_max = n_max;
    const auto r = ramsey_search(query);
    REQUIRE(r.search.status == SearchStatus::complete);
    return static_cast<int>(*r.search.value);
}

// Independent check: does some 2-coloring of the projective points of
// F_q^n avoid the targets? Brute force over all 2^points colorings.
bool oracle_two_coloring_exists(int q, int n, int t0, int t1) {
    const VectorSpace sp(q, n);
    const auto pts = projective_points(sp);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << pts.size()); ++m) {
        std::vector<Index> red, blue;
        for (std::size_t i = 0; i < pts.size(); ++i) ((m >> i) & 1 ? blue : red).push_back(pts[i]);
        if (oracle::omega(projectivize(sp, red), oracle::OmegaKind::linear) < t0 &&
            oracle::omega(projectivize(sp, blue), oracle::OmegaKind::linear) < t1)
            return true;
    }
    return false;
}

}  // namespace

TEST_CASE("one-color and trivial Ramsey numbers") {
    for (int q : {2, 3})
        for (int t = 1; t <= 3; ++t) {
            CHECK(ramsey(q, {1, t}) == t);
            CHECK(ramsey(q, {t, 1}) == t);
            CHECK(ramsey(q, {t}) == t);
        }
}

TEST_CASE("R_2(2,2) with a certified lower bound") {
    RamseyQuery query;
    query.q = 2;
    query.targets = {2, 2};
    query.n_max = 5;
    const auto r = ramsey_search(query);
    REQUIRE(r.search.status == SearchStatus::complete);
    const int value = static_cast<int>(*r.search.value);
    CHECK(value == 3);
    // Both directions by full enumeration.
    CHECK(oracle_two_coloring_exists(2, value - 1, 2, 2));
    CHECK_FALSE(oracle_two_coloring_exists(2, value, 2, 2));
    REQUIRE(r.lower_witness);
    CHECK(r.lower_witness->n == value - 1);
    CHECK(r.lower_witness->is_partition());
    for (const auto& cls : r.lower_witness->classes) CHECK(oracle::omega(cls, oracle::OmegaKind::linear) < 2);
    CHECK(r.deepest_complete == value);
}

TEST_CASE("three-color ground truths agree with the reduction") {
    CHECK(ramsey(2, {1, 2, 2}) == 3);
    CHECK(ramsey(2, {1, 1, 3}) == 3);
    // Over F_3 both exceed 3; a color with target 1 changes nothing.
    RamseyQuery a;
    a.q = 3;
    a.n_max = 3;
    a.targets = {1, 2, 2};
    RamseyQuery b = a;
    b.targets = {2, 2};
    const auto ra = ramsey_search(a);
    const auto rb = ramsey_search(b);
    CHECK(ra.search.status == rb.search.status);
    CHECK(ra.search.value == rb.search.value);
}

TEST_CASE("greater-than and budget reports") {
    RamseyQuery query;
    query.q = 2;
    query.targets = {2, 2};
    query.n_max = 2;
    const auto gt = ramsey_search(query);
    CHECK(gt.search.status == SearchStatus::greater_than);
    CHECK(*gt.search.value == 2);
    REQUIRE(gt.lower_witness);
    CHECK(gt.lower_witness->n == 2);

    query.n_max = 4;
    query.node_budget = 4;
    const auto cut = ramsey_search(query);
    CHECK(cut.search.status == SearchStatus::unknown);
    REQUIRE(cut.frontier);
    CHECK(cut.deepest_complete < 3);
}

TEST_CASE("resumed searches reach the same answer and witness") {
    for (const auto& [n, targets] : std::vector<std::pair<int, std::vector<int>>>{
             {3, {2, 2}}, {4, {2, 3}}, {2, {2, 2}}, {3, {2, 2, 2}}}) {
        const auto full = find_good_coloring(2, n, targets, std::uint64_t{1} << 30);
        std::optional<RamseyFrontier> frontier = RamseyFrontier{n, {}};
        ColoringSearchResult r;
        int rounds = 0;
        do {
            r = find_good_coloring(2, n, targets, 7, frontier);
            frontier = r.frontier;
            ++rounds;
        } while (r.outcome == ColoringSearchResult::Outcome::exhausted && rounds < 100000);
        INFO("n=", n);
        CHECK(r.outcome == full.outcome);
        if (full.witness) {
            REQUIRE(r.witness);
            CHECK(r.witness->classes == full.witness->classes);
        }
    }
}

TEST_CASE("Ramsey witnesses do not depend on the thread count") {
    set_thread_count(1);
    const auto a = find_good_coloring(2, 4, {2, 3}, std::uint64_t{1} << 30);
    set_thread_count(4);
    const auto b = find_good_coloring(2, 4, {2, 3}, std::uint64_t{1} << 30);
    set_thread_count(0);
    CHECK(a.outcome == b.outcome);
    REQUIRE(a.witness);
    REQUIRE(b.witness);
    CHECK(a.witness->classes == b.witness->classes);
    CHECK(a.witness->avoids({2, 3}));
}

TEST_CASE("Bose-Burton maxima and extremal sets") {
    for (const auto& [q, n, t] : std::vector<std::tuple<int, int, int>>{{2, 3, 2}, {2, 4, 2}, {3, 2, 2}, {2, 3, 1}, {2, 4, 3}}) {
        const auto r = bose_burton(q, n, t);
        INFO("q=", q, " n=", n, " t=", t);
        CHECK(r.formula_ok);
        CHECK(r.uniqueness_ok);
        CHECK(BigInt(r.witnesses.size()) == gaussian_binomial(q, n, n - t + 1));
        for (const auto& w : r.witnesses) CHECK(oracle::omega(w, oracle::OmegaKind::linear) < t);
    }
    CHECK(bose_burton(2, 3, 2).max_size == 4);
    CHECK(bose_burton(3, 2, 2).max_size == 3);
    CHECK(bose_burton(2, 3, 1).max_size == 0);
}

TEST_CASE("m_2(2) and its link to R_2(2,2)") {
    const auto m = mq_search(2, 2, 4);
    REQUIRE(m.search.status == SearchStatus::complete);
    const int mq = static_cast<int>(*m.search.value);
    // n = 2: any two distinct points.
    const auto it = std::find_if(m.decisions.begin(), m.decisions.end(), [](const MqDecision& d) { return d.n == 2; });
    REQUIRE(it != m.decisions.end());
    REQUIRE(it->witness);
    CHECK(it->witness->size() == 2);
    CHECK(oracle::omega(oracle::direction_set(*it->witness), oracle::OmegaKind::linear) < 2);
    // The deciding dimension: every 4-subset of F_2^mq fails, checked directly.
    const VectorSpace sp(2, mq);
    int subsets = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << sp.size()); ++mask) {
        if (std::popcount(mask) != static_cast<int>(ipow(BigInt(2), static_cast<unsigned>(mq - 1)))) continue;
        ++subsets;
        CHECK(oracle::omega(oracle::direction_set(PointSet::from_mask(2, mq, mask)), oracle::OmegaKind::linear) >= 2);
    }
    CHECK(subsets == 70);
    CHECK(ramsey(2, {2, 2}) <= mq);
    for (const auto& d : m.decisions)
        if (d.witness) {
            CHECK(d.witness->size() == d.set_size);
            CHECK(omega_arrow(*d.witness) < 2);
        }
}

TEST_CASE("m_q decisions for t = 1 and q = 3") {
    const auto one = mq_search(2, 1, 3);
    CHECK(one.search.status == SearchStatus::complete);
    CHECK(*one.search.value == 1);
    const auto three = mq_search(3, 2, 2);
    CHECK(three.search.status != SearchStatus::unknown);
    for (const auto& d : three.decisions)
        if (d.witness) CHECK(oracle::omega(oracle::direction_set(*d.witness), oracle::OmegaKind::linear) < 2);
}

TEST_CASE("recurrence checks") {
    std::map<std::vector<int>, int> table{{{2, 2}, 3}, {{1, 2, 2}, 3}, {{1, 3}, 3}, {{1, 1, 3}, 3}, {{1, 1}, 1}};
    const auto checks = check_recurrence(table);
    REQUIRE(checks.size() == 2);
    for (const auto& c : checks) CHECK(c.holds);
    table[{1, 2, 2}] = 4;
    bool any_fail = false;
    for (const auto& c : check_recurrence(table)) any_fail = any_fail || !c.holds;
    CHECK(any_fail);
}
