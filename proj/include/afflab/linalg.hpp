#pragma once

#include <optional>
#include <vector>

#include "afflab/field.hpp"

namespace afflab {

using DigitVector = std::vector<int>;

/// Incrementally built row echelon basis over F_q.
class EchelonBasis {
public:
    EchelonBasis(const Field& field, int length);

    /// Adds v if it is independent of the current rows; returns whether it was.
    bool insert(DigitVector v);
    bool independent(DigitVector v) const;
    DigitVector reduce(DigitVector v) const;
    int rank() const noexcept { return static_cast<int>(rows_.size()); }
    const std::vector<int>& pivots() const noexcept { return pivots_; }

private:
    Field field_;
    int length_;
    std::vector<DigitVector> rows_;  // each row has pivot entry 1
    std::vector<int> pivots_;
};

int rank(const Field& field, std::vector<DigitVector> rows);

/// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(const Field& field, std::vector<DigitVector>& rows);

/// Solves sum_i x_i * columns[i] = target; nullopt when inconsistent.
/// columns must be linearly independent.
std::optional<DigitVector> solve_combination(const Field& field,
                                             const std::vector<DigitVector>& columns,
                                             const DigitVector& target);

/// Basis of { x : sum_j x_j * columns[j] = 0 }.
std::vector<DigitVector> kernel(const Field& field, const std::vector<DigitVector>& columns);

/// Linear independence of encoded vectors in F_q^n.
bool linearly_independent(const VectorSpace& space, std::span<const Index> vectors);

}  // namespace afflab
