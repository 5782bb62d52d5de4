#include <doctest.h>

#include "afflab/oracle.hpp"
#include "afflab/space.hpp"
#include "afflab/subspace.hpp"
#include "helpers.hpp"

using namespace afflab;
using testing_helpers::random_set;

namespace {

PointSet set_of(int q, int n, std::vector<Index> pts) { return PointSet::from_indices(q, n, pts); }

}  // namespace

TEST_CASE("encoding round-trips and field arithmetic") {
    for (int q : {2, 3, 5, 7, 11, 13}) {
        const VectorSpace sp(q, 3);
        for (Index x = 0; x < sp.size(); ++x) {
            CHECK(sp.encode(sp.digits(x)) == x);
            CHECK(sp.add(x, sp.neg(x)) == 0);
            CHECK(sp.sub(sp.add(x, 7 % sp.size()), 7 % sp.size()) == x);
        }
        for (int a = 1; a < q; ++a) CHECK(sp.field().mul(a, sp.field().inv(a)) == 1);
    }
    CHECK_THROWS_AS(Field(4), DomainError);
    CHECK_THROWS_AS(Field(17), DomainError);
    CHECK_THROWS_AS(PointSet(2, 33), DomainError);
}

TEST_CASE("point set basics") {
    PointSet s(3, 2);
    s.insert(4);
    s.insert(0);
    s.insert(4);
    CHECK(s.size() == 2);
    CHECK(s.density() == Rational(2, 9));
    CHECK(s.complement().size() == 7);
    CHECK(s.translated(1).indices() == std::vector<Index>{1, 5});
    // F_2 translation through the word permutation matches pointwise addition.
    CounterRng rng(11);
    for (int n : {3, 6, 8}) {
        const PointSet a = random_set(rng, 2, n, 0.4);
        for (Index t = 0; t < a.universe(); t += 5) {
            PointSet expect(2, n);
            a.for_each([&](Index x) { expect.insert(x ^ t); });
            CHECK(a.translated(t) == expect);
        }
    }
}

TEST_CASE("subspace enumeration counts") {
    CHECK(enumerate_subspaces(2, 3, 1, SubspaceKind::linear).size() == 7);
    CHECK(enumerate_subspaces(2, 4, 0, SubspaceKind::linear).size() == 1);
    CHECK(enumerate_subspaces(3, 2, 1, SubspaceKind::affine).size() == 12);
    CHECK_THROWS_AS(SubspaceEnumerator(2, 2, -1, SubspaceKind::linear), DomainError);
    CHECK(enumerate_subspaces(2, 2, 3, SubspaceKind::linear).empty());
    for (int q : {2, 3, 5})
        for (int n = 0; n <= 5; ++n)
            for (int t = 0; t <= n; ++t) {
                if (q == 5 && n == 5 && t > 0 && t < 5) continue;  // large but covered by the count below
                const auto subs = enumerate_subspaces(q, n, t, SubspaceKind::linear);
                CHECK(BigInt(subs.size()) == gaussian_binomial(q, n, t));
                std::set<std::vector<Index>> distinct;
                for (const auto& s : subs) {
                    const auto el = s.points().indices();
                    CHECK(BigInt(el.size()) == ipow(BigInt(q), static_cast<unsigned>(t)));
                    distinct.insert(el);
                }
                CHECK(distinct.size() == subs.size());
            }
    SubspaceEnumerator big(5, 5, 2, SubspaceKind::linear);
    std::uint64_t count = 0;
    Subspace s;
    while (big.next(s)) ++count;
    CHECK(BigInt(count) == gaussian_binomial(5, 5, 2));
    CHECK(gaussian_binomial(2, 3, 1) == 7);
    CHECK(gaussian_binomial(3, 3, 2) == 13);
}

TEST_CASE("subspace stream restarts from any position") {
    for (auto kind : {SubspaceKind::linear, SubspaceKind::affine}) {
        const auto all = enumerate_subspaces(3, 3, 2, kind);
        for (std::uint64_t pos : {0ULL, 1ULL, 5ULL, 12ULL, static_cast<unsigned long long>(all.size() - 1)}) {
            SubspaceEnumerator e(3, 3, 2, kind);
            e.seek(pos);
            Subspace s;
            REQUIRE(e.next(s));
            CHECK(s.basis == all[pos].basis);
            CHECK(s.offset == all[pos].offset);
        }
        SubspaceEnumerator e(3, 3, 2, kind);
        e.seek(all.size());
        Subspace s;
        CHECK_FALSE(e.next(s));
    }
}

TEST_CASE("omega invariants on fixed sets") {
    PointSet all_nonzero = PointSet::full(2, 3);
    all_nonzero.erase(0);
    CHECK(omega_linear(all_nonzero) == 3);
    CHECK(oracle::omega(all_nonzero, oracle::OmegaKind::linear) == 3);
    // The hyperplane coset x_0 = 1 in F_2^3.
    const PointSet coset = set_of(2, 3, {1, 3, 5, 7});
    CHECK(omega_linear(coset) == 1);
    CHECK(omega_linear(PointSet(2, 3)) == 0);

    CHECK(omega_affine(set_of(3, 2, {5})) == 0);
    CHECK(omega_affine(set_of(3, 1, {0, 1, 2})) == 1);
    CHECK(omega_affine(set_of(3, 1, {0, 1})) == 0);
    CHECK_FALSE(omega_affine(PointSet(3, 2)).has_value());

    CHECK(direction_set(PointSet::full(3, 1)) == PointSet::full(3, 1));
    CHECK(direction_set(set_of(3, 1, {0, 1})) == set_of(3, 1, {0}));
    CHECK(omega_arrow(set_of(3, 1, {0, 1})) == 0);
    CHECK(direction_set(PointSet(3, 2)).empty());

    // An embedded F_3^2 inside F_3^3.
    PointSet flat(3, 3);
    for (Index x = 0; x < 9; ++x) flat.insert(x);
    CHECK(omega_arrow(flat) == 2);
}

TEST_CASE("projectively determined sets") {
    PointSet s = PointSet::full(2, 4);
    s.erase(0);
    CHECK(is_projectively_determined(s));
    CHECK_FALSE(is_projectively_determined(set_of(3, 1, {1})));
    const VectorSpace sp(3, 2);
    const std::vector<Index> lines{1, 3};
    const PointSet p = projectivize(sp, lines);
    CHECK(p.indices() == std::vector<Index>{1, 2, 3, 6});
    CHECK(projective_support(p) == lines);
    CHECK(projective_points(sp).size() == 4);
}

TEST_CASE("chain inequality omega <= omega_aff <= omega_arrow on random sets") {
    CounterRng rng(2024);
    int checked = 0;
    for (int q : {2, 3})
        for (int n = 1; n <= 4; ++n)
            for (int i = 0; i < 150; ++i) {
                const PointSet s = random_set(rng, q, n, 0.2 + 0.7 * rng.uniform());
                if (s.empty()) continue;
                const int w = omega_linear(s);
                const int wa = *omega_affine(s);
                const int wr = omega_arrow(s);
                // omega counts subspaces of s union {0}, so the left inequality
                // needs 0 in s; in general it holds against s union {0}.
                PointSet with_zero = s;
                with_zero.insert(0);
                CHECK(w <= *omega_affine(with_zero));
                if (s.contains(0)) CHECK(w <= wa);
                CHECK(wa <= wr);
                ++checked;
            }
    CHECK(checked >= 1000);
    // Without 0 the left inequality can fail: a lone nonzero point of F_2^n.
    const PointSet lone = set_of(2, 3, {5});
    CHECK(omega_linear(lone) == 1);
    CHECK(*omega_affine(lone) == 0);
}

TEST_CASE("fast omega and direction sets agree with full enumeration") {
    CounterRng rng(77);
    for (int q : {2, 3})
        for (int n = 1; n <= (q == 2 ? 4 : 3); ++n)
            for (int i = 0; i < 40; ++i) {
                const PointSet s = random_set(rng, q, n, rng.uniform());
                CHECK(direction_set(s) == oracle::direction_set(s));
                CHECK(omega_linear(s) == oracle::omega(s, oracle::OmegaKind::linear));
                CHECK(omega_affine(s).value_or(-1) == oracle::omega(s, oracle::OmegaKind::affine));
                CHECK(omega_arrow(s) == oracle::omega(s, oracle::OmegaKind::arrow));
                for (int t = 0; t <= n; ++t)
                    CHECK(contains_linear_subspace(s, t) == (omega_linear(s) >= t));
            }
}

TEST_CASE("direction sets are translation invariant") {
    auto check_all = [](int q, int n) {
        const VectorSpace sp(q, n);
        const std::uint64_t subsets = std::uint64_t{1} << sp.size();
        for (std::uint64_t m = 0; m < subsets; ++m) {
            const PointSet s = PointSet::from_mask(q, n, m);
            const PointSet d = direction_set(s);
            for (Index x = 0; x < sp.size(); ++x) REQUIRE(direction_set(s.translated(x)) == d);
        }
    };
    check_all(2, 1);
    check_all(2, 2);
    check_all(2, 3);
    check_all(3, 1);
    check_all(3, 2);
}

TEST_CASE("over F_2 the direction set is the sumset") {
    CounterRng rng(5);
    for (int n = 1; n <= 7; ++n)
        for (int i = 0; i < 20; ++i) {
            const PointSet s = random_set(rng, 2, n, rng.uniform() * 0.5);
            PointSet sum(2, n);
            const auto pts = s.indices();
            for (Index x : pts)
                for (Index y : pts) sum.insert(x ^ y);
            CHECK(direction_set(s) == sum);
        }
}

TEST_CASE("linear subspaces through a point") {
    PointSet s = PointSet::full(2, 3);
    s.erase(0);
    s.erase(7);
    // Without 7 the planes through 1 are {1,2,3} and {1,4,5}.
    CHECK(contains_linear_subspace_through(s, 1, 2));
    CHECK_FALSE(contains_linear_subspace_through(s, 1, 3));
    CHECK_FALSE(contains_linear_subspace_through(s, 7, 1));
}
