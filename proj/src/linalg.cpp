#include "afflab/linalg.hpp"

#include <array>
#include <bit>

namespace afflab {

EchelonBasis::EchelonBasis(const Field& field, int length) : field_(field), length_(length) {}

DigitVector EchelonBasis::reduce(DigitVector v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const int p = pivots_[r];
        const int c = v[static_cast<std::size_t>(p)];
        if (c == 0) continue;
        for (int j = p; j < length_; ++j) {
            auto& x = v[static_cast<std::size_t>(j)];
            x = field_.sub(x, field_.mul(c, rows_[r][static_cast<std::size_t>(j)]));
        }
    }
    return v;
}

bool EchelonBasis::independent(DigitVector v) const {
    v = reduce(std::move(v));
    for (int x : v)
        if (x != 0) return true;
    return false;
}

bool EchelonBasis::insert(DigitVector v) {
    if (static_cast<int>(v.size()) != length_) throw DomainError("vector length mismatch");
    v = reduce(std::move(v));
    int p = 0;
    while (p < length_ && v[static_cast<std::size_t>(p)] == 0) ++p;
    if (p == length_) return false;
    const int inv = field_.inv(v[static_cast<std::size_t>(p)]);
    for (auto& x : v) x = field_.mul(x, inv);
    // Keep rows reduced against each other's pivots so reduce() is one pass.
    for (auto& row : rows_) {
        const int c = row[static_cast<std::size_t>(p)];
        if (c == 0) continue;
        for (int j = 0; j < length_; ++j) {
            auto& x = row[static_cast<std::size_t>(j)];
            x = field_.sub(x, field_.mul(c, v[static_cast<std::size_t>(j)]));
        }
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
}

std::vector<int> rref(const Field& field, std::vector<DigitVector>& rows) {
    std::vector<int> pivots;
    if (rows.empty()) return pivots;
    const std::size_t cols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        const int inv = field.inv(rows[r][c]);
        for (auto& x : rows[r]) x = field.mul(x, inv);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const int f = rows[i][c];
            for (std::size_t j = 0; j < cols; ++j)
                rows[i][j] = field.sub(rows[i][j], field.mul(f, rows[r][j]));
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    rows.resize(r);
    return pivots;
}

int rank(const Field& field, std::vector<DigitVector> rows) {
    return static_cast<int>(rref(field, rows).size());
}

std::optional<DigitVector> solve_combination(const Field& field,
                                             const std::vector<DigitVector>& columns,
                                             const DigitVector& target) {
    const std::size_t k = columns.size();
    const std::size_t len = target.size();
    // Augmented system: rows are coordinates, columns the unknowns plus rhs.
    std::vector<DigitVector> m(len, DigitVector(k + 1, 0));
    for (std::size_t i = 0; i < len; ++i) {
        for (std::size_t j = 0; j < k; ++j) m[i][j] = columns[j][i];
        m[i][k] = target[i];
    }
    const auto pivots = rref(field, m);
    DigitVector x(k, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        const auto c = static_cast<std::size_t>(pivots[r]);
        if (c == k) return std::nullopt;
        x[c] = m[r][k];
    }
    return x;
}

std::vector<DigitVector> kernel(const Field& field, const std::vector<DigitVector>& columns) {
    const std::size_t k = columns.size();
    if (k == 0) return {};
    const std::size_t len = columns[0].size();
    std::vector<DigitVector> m(len, DigitVector(k, 0));
    for (std::size_t i = 0; i < len; ++i)
        for (std::size_t j = 0; j < k; ++j) m[i][j] = columns[j][i];
    const auto pivots = rref(field, m);
    std::vector<bool> is_pivot(k, false);
    for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<DigitVector> basis;
    for (std::size_t f = 0; f < k; ++f) {
        if (is_pivot[f]) continue;
        DigitVector v(k, 0);
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[static_cast<std::size_t>(pivots[r])] = field.neg(m[r][f]);
        basis.push_back(std::move(v));
    }
    return basis;
}

bool linearly_independent(const VectorSpace& space, std::span<const Index> vectors) {
    if (vectors.empty()) return true;
    if (space.q() == 2 && space.dim() <= 64) {
        // Gaussian elimination on bit patterns, one row per leading bit.
        std::array<Index, 64> by_top{};
        for (Index v : vectors) {
            while (v) {
                const int top = 63 - std::countl_zero(v);
                if (!by_top[static_cast<std::size_t>(top)]) {
                    by_top[static_cast<std::size_t>(top)] = v;
                    break;
                }
                v ^= by_top[static_cast<std::size_t>(top)];
            }
            if (v == 0) return false;
        }
        return true;
    }
    EchelonBasis eb(space.field(), space.dim());
    for (Index v : vectors)
        if (!eb.insert(space.digits(v))) return false;
    return true;
}

}  // namespace afflab
