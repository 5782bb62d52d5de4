#include <doctest.h>

#include "afflab/hom.hpp"
#include "afflab/oracle.hpp"
#include "afflab/parallel.hpp"
#include "helpers.hpp"

using namespace afflab;
using testing_helpers::random_config;
using testing_helpers::random_set;

namespace {

PointSet set_of(int q, int n, std::vector<Index> pts) { return PointSet::from_indices(q, n, pts); }

BigInt total(const AffineConfiguration& b, const PointSet& a) {
    HomCountOptions o;
    o.with_automorphisms = false;
    return hom_count(b, a, o).total;
}

}  // namespace

TEST_CASE("hom counts on small instances") {
    CHECK(total(make_cube(2, 2), PointSet::full(2, 2)) == 64);
    CHECK(total(make_circuit(3), PointSet::full(2, 3)) == BigInt(8) * 8 * 8 * 8 * 8);
    const auto line3 = make_cube(3, 1);
    const auto r = hom_count(line3, set_of(3, 1, {0, 1}));
    CHECK(r.total == 2);
    CHECK(r.degenerate == 2);
    CHECK(r.nondegenerate == 0);
    CHECK(*r.copies == 0);
    const auto sq = hom_count(make_cube(2, 2), PointSet::full(2, 2));
    CHECK(sq.degenerate == 40);
    CHECK(sq.nondegenerate == 24);
    const auto pt = AffineConfiguration(3, 2, {{1, 1}});
    const PointSet some = set_of(3, 2, {0, 4, 8});
    CHECK(hom_count(pt, some).total == 3);
    CHECK(degenerate_hom_count(pt, some) == 0);
}

TEST_CASE("hom(F_2^1, A) = |A|^2 and pair copies") {
    const auto line = make_cube(2, 1);
    for (int n = 1; n <= 3; ++n) {
        const std::uint64_t subsets = std::uint64_t{1} << (1U << n);
        for (std::uint64_t m = 0; m < subsets; ++m) {
            const PointSet a = PointSet::from_mask(2, n, m);
            const auto r = hom_count(line, a);
            const BigInt k = a.size();
            CHECK(r.total == k * k);
            CHECK(r.degenerate == k);
            CHECK(*r.copies == k * (k - (k > 0 ? 1 : 0)) / 2);
        }
    }
}

TEST_CASE("automorphism groups") {
    CHECK(aut_order(make_cube(2, 1)) == 2);
    CHECK(aut_order(make_cube(2, 2)) == 24);
    CHECK(aut_order(make_cube(3, 1)) == 6);
    CHECK(aut_order(make_cube(2, 3)) == 8 * 168);
    CHECK(aut_order(make_circuit(3)) == 720);
    CHECK(aut_order(AffineConfiguration(2, 3, {{0, 0, 0}})) == 1);
    // Agrees with the non-degenerate count into the configuration's own points.
    CounterRng rng(8);
    for (int i = 0; i < 40; ++i) {
        const auto b = random_config(rng, i % 2 ? 3 : 2, 2, 6);
        const auto r = hom_count(b, b.as_point_set());
        CHECK(r.nondegenerate == aut_order(b));
        CHECK(*r.copies == 1);
    }
}

TEST_CASE("copies") {
    CHECK(contains_copy(make_cube(3, 1), PointSet::full(3, 1)));
    CHECK_FALSE(contains_copy(make_cube(3, 1), set_of(3, 1, {0, 1})));
    const auto cap = set_of(3, 2, {0, 1, 3, 4});
    CHECK_FALSE(contains_copy(make_cube(3, 1), cap));
    CHECK(oracle::is_free(make_cube(3, 1), cap));
    CHECK_FALSE(oracle::is_free(make_cube(2, 1), set_of(2, 2, {1, 2})));
    const auto f = find_copy(make_cube(2, 2), set_of(2, 3, {1, 2, 5, 6}));
    REQUIRE(f.has_value());
    CHECK(f->apply(0) == 1);
    CHECK(copy_count(make_circuit(3), make_circuit(3).as_point_set()) == 1);
}

TEST_CASE("back ends agree and match the oracle") {
    CounterRng rng(1234);
    for (int i = 0; i < 150; ++i) {
        const int q = i % 3 == 0 ? 3 : 2;
        const int n = 1 + static_cast<int>(rng.below(q == 2 ? 3 : 2));
        const auto b = random_config(rng, q, 1 + static_cast<int>(rng.below(3)), 5);
        const PointSet a = random_set(rng, q, n, 0.3 + 0.6 * rng.uniform());
        if (BigInt(a.universe()) * a.universe() * a.universe() * a.universe() > (BigInt(1) << 24) &&
            b.rank_affine() > 3)
            continue;
        const HomCounter hc(b, n);
        const HomTally s = hc.count_scalar(a);
        CHECK(hc.count_bitset(a) == s);
        CHECK(hc.count_mask(a.mask()) == s);
        CHECK(hc.count(a) == s);
        CHECK(BigInt(s.total) == oracle::hom_count(b, a));
        CHECK(BigInt(s.total - s.degenerate) == oracle::nondegenerate_hom_count(b, a));
        CHECK(contains_copy(b, a) == !oracle::is_free(b, a));
        CHECK(CopyFinder(b, a.space()).has_copy(a) == contains_copy(b, a));
    }
    // Larger hosts exercise the multi-word paths.
    for (int i = 0; i < 12; ++i) {
        const int q = i % 2 ? 3 : 2;
        const int n = q == 2 ? 8 : 5;
        const auto b = i % 4 < 2 ? make_cube(q, 1) : make_cube(2, 2);
        if (b.q() != q) continue;
        const PointSet a = random_set(rng, q, n, 0.5);
        const HomCounter hc(b, n);
        const HomTally s = hc.count_scalar(a);
        CHECK(hc.count_bitset(a) == s);
    }
}

TEST_CASE("parallel counts match single-threaded counts") {
    CounterRng rng(4);
    const PointSet a = random_set(rng, 2, 7, 0.6);
    const auto b = make_cube(2, 2);
    set_thread_count(1);
    const HomTally one = HomCounter(b, 7).count(a);
    set_thread_count(4);
    const HomTally four = HomCounter(b, 7).count(a);
    set_thread_count(0);
    CHECK(one == four);
}

TEST_CASE("hom counts are invariant under symmetries of A and B") {
    const auto b = make_cube(2, 2);
    const VectorSpace sp(2, 3);
    // All of F_2^3: translations and the coordinate cycle.
    for (std::uint64_t m = 0; m < 256; ++m) {
        const PointSet a = PointSet::from_mask(2, 3, m);
        const BigInt base = total(b, a);
        for (Index t = 0; t < 8; ++t) REQUIRE(total(b, a.translated(t)) == base);
        PointSet rot(2, 3), shear(2, 3);
        a.for_each([&](Index x) {
            rot.insert(((x << 1) | (x >> 2)) & 7);
            shear.insert(x ^ ((x & 1) << 1));
        });
        REQUIRE(total(b, rot) == base);
        REQUIRE(total(b, shear) == base);
        // Translating or re-basing B changes nothing.
        REQUIRE(total(b.translated({1, 1}), a) == base);
        const std::vector<std::size_t> order{3, 1, 2, 0};
        REQUIRE(total(b.permuted(order), a) == base);
    }
    CounterRng rng(6);
    for (int i = 0; i < 60; ++i) {
        const auto c = random_config(rng, 3, 2, 5);
        const PointSet a = random_set(rng, 3, 2, 0.6);
        const BigInt base = total(c, a);
        const VectorSpace s3(3, 2);
        PointSet moved(3, 2), mapped(3, 2);
        a.for_each([&](Index x) {
            moved.insert(s3.add(x, 5));
            const int x0 = s3.digit(x, 0), x1 = s3.digit(x, 1);
            const std::vector<int> y{(x0 + x1) % 3, (2 * x1) % 3};
            mapped.insert(s3.encode(y));
        });
        CHECK(total(c, moved) == base);
        CHECK(total(c, mapped) == base);
        std::vector<std::size_t> order(c.size());
        for (std::size_t j = 0; j < order.size(); ++j) order[j] = order.size() - 1 - j;
        CHECK(total(c.permuted(order), a) == base);
    }
}

TEST_CASE("Monte-Carlo estimates land within five standard errors") {
    CounterRng rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const int q = trial % 2 ? 3 : 2;
        const auto b = random_config(rng, q, 2, 4);
        const int n = q == 2 ? 4 : 3;
        const PointSet a = random_set(rng, q, n, 0.5 + 0.4 * rng.uniform());
        HomCountOptions o;
        o.with_automorphisms = false;
        const auto exact = hom_count(b, a, o);
        o.mode = CountMode::monte_carlo;
        o.samples = 20000;
        o.seed = 1000 + static_cast<std::uint64_t>(trial);
        const auto est = hom_count(b, a, o);
        const long double diff = std::fabs(est.estimate - to_long_double(exact.total));
        // A zero-variance estimate must be exact.
        CHECK(diff <= 5 * est.std_error + 1e-9L * to_long_double(exact.total) + (est.std_error == 0 ? 0 : 0));
        const auto again = hom_count(b, a, o);
        CHECK(again.hits == est.hits);
    }
}

TEST_CASE("degenerate homomorphisms stay below (q alpha N)^(r-1)") {
    CounterRng rng(17);
    for (int i = 0; i < 200; ++i) {
        const int q = i % 2 ? 3 : 2;
        const auto b = random_config(rng, q, 1 + static_cast<int>(rng.below(3)), 5);
        const int n = 1 + static_cast<int>(rng.below(q == 2 ? 4 : 2));
        PointSet a = random_set(rng, q, n, rng.uniform());
        if (a.empty()) a.insert(0);
        const BigInt deg = degenerate_hom_count(b, a);
        const BigInt bound = ipow(BigInt(q) * a.size(), static_cast<unsigned>(b.rank_affine() - 1));
        if (b.rank_affine() == 1)
            CHECK(deg == 0);
        else
            CHECK(deg < bound);
    }
}

TEST_CASE("budget is enforced") {
    CHECK_THROWS_AS(HomCounter(make_cube(2, 3), 10, BigInt(1) << 20), BudgetExceeded);
    try {
        HomCounter(make_cube(2, 3), 10, BigInt(1) << 20);
    } catch (const BudgetExceeded& e) {
        CHECK(e.required() == BigInt(1) << 40);
    }
}
