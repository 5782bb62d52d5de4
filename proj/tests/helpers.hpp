#pragma once

#include <doctest.h>

#include "afflab/config.hpp"
#include "afflab/point_set.hpp"
#include "afflab/rng.hpp"

namespace testing_helpers {

inline afflab::PointSet random_set(afflab::CounterRng& rng, int q, int n, double p) {
    afflab::PointSet s(q, n);
    for (afflab::Index x = 0; x < s.universe(); ++x)
        if (rng.bernoulli(p)) s.insert(x);
    return s;
}

// Random configuration of 1..max_points distinct points in F_q^m.
inline afflab::AffineConfiguration random_config(afflab::CounterRng& rng, int q, int m,
                                                 std::size_t max_points) {
    const afflab::VectorSpace sp(q, m);
    const std::size_t want = 1 + rng.below(std::min<std::uint64_t>(max_points, sp.size()));
    std::vector<afflab::Index> pts;
    while (pts.size() < want) {
        const afflab::Index x = rng.below(sp.size());
        if (std::find(pts.begin(), pts.end(), x) == pts.end()) pts.push_back(x);
    }
    return afflab::AffineConfiguration::from_indices(q, m, pts);
}

}  // namespace testing_helpers
