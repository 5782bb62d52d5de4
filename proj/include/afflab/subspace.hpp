#pragma once

#include <cstdint>
#include <vector>

#include "afflab/point_set.hpp"

namespace afflab {

enum class SubspaceKind { linear, affine };

/// A linear subspace given by its canonical RREF basis, optionally translated.
///
/// Pivots are the lowest nonzero coordinate of each row; rows are sorted by
/// pivot and every pivot column is zero outside its own row. For affine
/// subspaces the offset is reduced: it vanishes on every pivot column.
struct Subspace {
    int q = 2;
    int n = 0;
    std::vector<Index> basis;
    Index offset = 0;

    int dim() const noexcept { return static_cast<int>(basis.size()); }
    std::vector<Index> elements() const;
    PointSet points() const;
};

/// [n choose t]_q
BigInt gaussian_binomial(int q, int n, int t);

/// Deterministic stream of all t-dimensional subspaces of F_q^n.
///
/// Order: pivot sets in lexicographic order; within a pivot set, free RREF
/// entries as a base-q counter; for affine kind, each linear subspace is
/// followed by its q^(n-t) cosets in offset-counter order. Restartable from any
/// position via seek().
class SubspaceEnumerator {
public:
    SubspaceEnumerator(int q, int n, int t, SubspaceKind kind);

    bool next(Subspace& out);
    std::uint64_t position() const noexcept { return position_; }
    void seek(std::uint64_t position);
    BigInt total() const;

private:
    bool load_pivots();
    void build(Subspace& out) const;

    VectorSpace space_;
    int t_;
    SubspaceKind kind_;
    std::vector<int> pivots_;
    std::vector<std::pair<int, int>> free_slots_;  // (row, column)
    std::vector<int> non_pivots_;
    std::vector<int> free_values_;
    std::vector<int> offset_values_;
    bool started_ = false;
    bool pending_ = false;  // seek() loaded a state that next() has not returned yet
    bool done_ = false;
    std::uint64_t position_ = 0;
};

std::vector<Subspace> enumerate_subspaces(int q, int n, int t, SubspaceKind kind);

}  // namespace afflab
