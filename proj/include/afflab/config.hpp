#pragma once

#include <string>
#include <vector>

#include "afflab/linalg.hpp"
#include "afflab/point_set.hpp"

namespace afflab {

inline constexpr int kMaxConfigPoints = 64;
inline constexpr int kMaxConfigDim = 16;

/// A finite ordered configuration B in F_q^m, with its affine structure cached.
///
/// The affine basis is chosen greedily in point order, so basis()[0] is the
/// first point. Every point b satisfies
///     b = x_0 + sum_i coords(b)[i] * (x_{i+1} - x_0).
class AffineConfiguration {
public:
    AffineConfiguration(int q, int m, std::vector<DigitVector> points);

    static AffineConfiguration from_indices(int q, int m, std::span<const Index> points);

    int q() const noexcept { return space_.q(); }
    int dim() const noexcept { return space_.dim(); }
    const VectorSpace& space() const noexcept { return space_; }
    std::size_t size() const noexcept { return points_.size(); }

    const std::vector<DigitVector>& points() const noexcept { return points_; }
    const std::vector<Index>& point_indices() const noexcept { return indices_; }

    int rank_affine() const noexcept { return static_cast<int>(basis_idx_.size()); }
    int rank_linear() const noexcept { return rank_lin_; }
    const std::vector<std::size_t>& basis_indices() const noexcept { return basis_idx_; }
    std::vector<DigitVector> affine_basis() const;
    /// Coefficient vectors, one per point, each of length rank_affine() - 1.
    const std::vector<DigitVector>& coords() const noexcept { return coords_; }

    /// The points as a subset of F_q^m.
    PointSet as_point_set() const;

    /// Same points, different order (affects only the chosen basis).
    AffineConfiguration permuted(std::span<const std::size_t> order) const;
    AffineConfiguration translated(const DigitVector& shift) const;

private:
    VectorSpace space_;
    std::vector<DigitVector> points_;
    std::vector<Index> indices_;
    std::vector<std::size_t> basis_idx_;
    std::vector<DigitVector> coords_;
    int rank_lin_ = 0;
};

/// F_q^t in index order.
AffineConfiguration make_cube(int q, int t);
/// C_2k = {0, e_1, ..., e_{2k-2}, e_1 + ... + e_{2k-2}} in F_2^{2k-2}.
AffineConfiguration make_circuit(int k);
/// Parses "cube:q:t" or "circuit:k".
AffineConfiguration make_named(const std::string& spec);

/// Points (a, b) in lexicographic pair order; a occupies the low coordinates.
AffineConfiguration product(const AffineConfiguration& left, const AffineConfiguration& right);

/// { z + sum_i coords(b)[i] * u[i] : b in B } inside the space of z and u.
PointSet span_of(const AffineConfiguration& b, const VectorSpace& target, Index z,
                 std::span<const Index> u);

/// The offsets sum_i coords(b)[i] * u[i], one per point of B.
std::vector<Index> span_offsets(const AffineConfiguration& b, const VectorSpace& target,
                                std::span<const Index> u);

/// Rank recomputed from scratch by elimination on differences.
int recompute_rank_affine(const AffineConfiguration& b);

/// Matrix-plus-translation affine map F_q^m -> F_q^n.
struct AffineMap {
    VectorSpace source;
    VectorSpace target;
    Index translation = 0;
    std::vector<Index> columns;  // image of e_j under the linear part

    Index apply(Index x) const;

    /// An affine map sending x_0 to z and x_i to z + u_i on the basis of b.
    static AffineMap from_basis_images(const AffineConfiguration& b, const VectorSpace& target,
                                       Index z, std::span<const Index> u);
};

}  // namespace afflab
