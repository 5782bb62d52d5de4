#pragma once

#include <optional>
#include <vector>

#include "afflab/point_set.hpp"

namespace afflab {

/// Largest t such that some linear t-space W has W \ {0} inside s.
int omega_linear(const PointSet& s);

/// Largest affine flat inside s; nullopt for the empty set.
std::optional<int> omega_affine(const PointSet& s);

/// { d : x + c*d in s for all c, for some x }. Contains 0 iff s is nonempty.
PointSet direction_set(const PointSet& s);

/// omega_linear(direction_set(s)).
int omega_arrow(const PointSet& s);

/// Whether s union {0} contains a linear t-space; t <= 0 is always true.
bool contains_linear_subspace(const PointSet& s, int t);

/// Whether s union {0} contains a linear t-space through the nonzero point p.
bool contains_linear_subspace_through(const PointSet& s, Index p, int t);

/// 0 not in s and s closed under nonzero scalars.
bool is_projectively_determined(const PointSet& s);

/// Canonical representatives (smallest index) of the 1-subspaces of F_q^n.
std::vector<Index> projective_points(const VectorSpace& space);

/// Union of l \ {0} over the 1-subspaces spanned by the given nonzero vectors.
PointSet projectivize(const VectorSpace& space, std::span<const Index> lines);

/// Canonical representatives of the lines inside a projectively determined set.
std::vector<Index> projective_support(const PointSet& s);

/// s x t inside F_q^(n+m); the first factor occupies the low coordinates.
PointSet product(const PointSet& s, const PointSet& t);

}  // namespace afflab
