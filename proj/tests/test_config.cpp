#include <doctest.h>

#include "afflab/config.hpp"
#include "afflab/space.hpp"
#include "helpers.hpp"

using namespace afflab;
using testing_helpers::random_config;

namespace {

AffineConfiguration figure_a() { return AffineConfiguration(2, 3, {{1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 1}}); }
AffineConfiguration figure_b() { return AffineConfiguration(2, 2, {{0, 0}, {1, 0}, {0, 1}}); }

int linear_rank(const AffineConfiguration& c) { return rank(c.space().field(), c.points()); }

}  // namespace

TEST_CASE("ranks of named configurations") {
    for (int t = 0; t <= 4; ++t) CHECK(make_cube(2, t).rank_affine() == t + 1);
    CHECK(make_cube(3, 2).rank_affine() == 3);
    const auto c6 = make_circuit(3);
    CHECK(c6.size() == 6);
    CHECK(c6.dim() == 4);
    CHECK(c6.rank_affine() == 5);
    CHECK(make_circuit(2).as_point_set() == PointSet::full(2, 2));
    CHECK(make_cube(3, 1).point_indices() == std::vector<Index>{0, 1, 2});
    CHECK(AffineConfiguration(3, 2, {{1, 2}}).rank_affine() == 1);
    CHECK(make_named("circuit:4").size() == 8);
    CHECK(make_named("cube:3:2").size() == 9);
    CHECK_THROWS_AS(make_named("sphere:2"), DomainError);
    CHECK_THROWS_AS(make_circuit(1), DomainError);
    CHECK_THROWS_AS(AffineConfiguration(2, 2, {}), DomainError);
    CHECK_THROWS_AS(AffineConfiguration(2, 2, {{0, 1}, {0, 1}}), DomainError);
}

TEST_CASE("coordinates reproduce every point") {
    CounterRng rng(3);
    for (int i = 0; i < 300; ++i) {
        const int q = i % 2 ? 3 : 2;
        const auto b = random_config(rng, q, 1 + static_cast<int>(rng.below(4)), 8);
        const auto basis = b.affine_basis();
        const Field& f = b.space().field();
        for (std::size_t j = 0; j < b.size(); ++j) {
            DigitVector x = basis[0];
            for (std::size_t k = 0; k + 1 < basis.size(); ++k)
                for (std::size_t c = 0; c < x.size(); ++c)
                    x[c] = f.add(x[c], f.mul(b.coords()[j][k], f.sub(basis[k + 1][c], basis[0][c])));
            CHECK(x == b.points()[j]);
        }
        CHECK(b.rank_affine() == recompute_rank_affine(b));
        CHECK(b.rank_linear() == linear_rank(b));
        CHECK((b.rank_linear() == b.rank_affine() || b.rank_linear() == b.rank_affine() - 1));
        CHECK(b.basis_indices()[0] == 0);
    }
}

TEST_CASE("products of configurations") {
    const auto p = product(figure_a(), figure_b());
    CHECK(p.size() == 12);
    CHECK(p.dim() == 5);
    CHECK(figure_a().rank_affine() == 4);
    CHECK(figure_b().rank_affine() == 3);
    CHECK(p.rank_affine() == 6);
    CHECK(recompute_rank_affine(p) == 6);
    const auto single = AffineConfiguration(2, 1, {{1}});
    CHECK(product(make_cube(2, 1), single).rank_affine() == 2);
    CHECK_THROWS_AS(product(make_cube(2, 1), make_cube(3, 1)), DomainError);
}

TEST_CASE("product identities on random pairs") {
    CounterRng rng(99);
    for (int q : {2, 3})
        for (int i = 0; i < 200; ++i) {
            const int m1 = 1 + static_cast<int>(rng.below(q == 2 ? 4 : 2));
            const int m2 = 1 + static_cast<int>(rng.below(q == 2 ? 4 : 2));
            auto a = random_config(rng, q, m1, 6);
            auto b = random_config(rng, q, m2, 6);
            const auto p = product(a, b);
            CHECK(p.rank_affine() == a.rank_affine() + b.rank_affine() - 1);
            const PointSet sa = a.as_point_set(), sb = b.as_point_set(), sp = p.as_point_set();
            CHECK(sp == product(sa, sb));
            CHECK(direction_set(sp) == product(direction_set(sa), direction_set(sb)));
            CHECK(omega_arrow(sp) == omega_arrow(sa) + omega_arrow(sb));
            CHECK(*omega_affine(sp) == *omega_affine(sa) + *omega_affine(sb));
            if (sa.contains(0) && sb.contains(0)) {
                CHECK(omega_linear(sp) == omega_linear(sa) + omega_linear(sb));
                CHECK(p.rank_linear() == a.rank_linear() + b.rank_linear());
            }
        }
}

TEST_CASE("span_of and affine maps") {
    const auto line = make_cube(2, 1);
    const VectorSpace sp(2, 3);
    const std::vector<Index> u{3};
    CHECK(span_of(line, sp, 5, u).indices() == std::vector<Index>{5, 6});
    const std::vector<Index> zero{0};
    CHECK(span_of(line, sp, 5, zero).size() == 1);
    // Directions taken from B itself reproduce B.
    const auto c6 = make_circuit(3);
    std::vector<Index> dirs;
    for (std::size_t i = 1; i < c6.basis_indices().size(); ++i)
        dirs.push_back(c6.space().sub(c6.point_indices()[c6.basis_indices()[i]], c6.point_indices()[0]));
    CHECK(span_of(c6, c6.space(), c6.point_indices()[0], dirs) == c6.as_point_set());
    const AffineMap f = AffineMap::from_basis_images(c6, sp, 2, std::vector<Index>{1, 4, 5, 7});
    const auto offs = span_offsets(c6, sp, std::vector<Index>{1, 4, 5, 7});
    for (std::size_t j = 0; j < c6.size(); ++j) CHECK(f.apply(c6.point_indices()[j]) == sp.add(2, offs[j]));
    CHECK_THROWS_AS(span_offsets(c6, sp, std::vector<Index>{1}), DomainError);
}
