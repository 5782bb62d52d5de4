#pragma once

// Slow reference implementations. They share no code paths with the fast
// counters beyond point arithmetic, and exist so results can be re-verified.

#include "afflab/config.hpp"
#include "afflab/point_set.hpp"

namespace afflab::oracle {

/// Enumerates every assignment of the affine basis of B into F_q^n, extends
/// it by brute-force-recovered coefficients, and counts those landing in A.
/// Every counted map is also checked against a generating set of B's affine
/// relations. Requires N^r <= 2^24.
BigInt hom_count(const AffineConfiguration& b, const PointSet& a);
/// Same enumeration, counting only maps with affinely independent basis images.
BigInt nondegenerate_hom_count(const AffineConfiguration& b, const PointSet& a);

enum class OmegaKind { linear, affine, arrow };

/// Full subspace enumeration; affine kind returns -1 for the empty set.
int omega(const PointSet& s, OmegaKind kind);

/// The direction set straight from its definition (all x, d, lambda).
PointSet direction_set(const PointSet& s);

/// True when no injective map B -> A is an affine isomorphism onto its image.
bool is_free(const AffineConfiguration& b, const PointSet& a);

/// Basis of the affine relations sum lambda_i b_i = 0, sum lambda_i = 0.
std::vector<DigitVector> affine_relations(const AffineConfiguration& b);

}  // namespace afflab::oracle
