#pragma once

#include <array>
#include <span>
#include <vector>

#include "afflab/types.hpp"

namespace afflab {

inline constexpr int kMaxFieldOrder = 13;
inline constexpr Index kMaxPointSetSize = Index{1} << 32;

bool is_prime(int q);

/// Prime field F_q with 2 <= q <= 13. Residues are plain ints in [0, q).
class Field {
public:
    explicit Field(int q);

    int order() const noexcept { return q_; }
    int add(int a, int b) const noexcept { return (a + b) % q_; }
    int sub(int a, int b) const noexcept { return (a - b + q_) % q_; }
    int mul(int a, int b) const noexcept { return (a * b) % q_; }
    int neg(int a) const noexcept { return (q_ - a) % q_; }
    int inv(int a) const;

    bool operator==(const Field&) const = default;

private:
    int q_;
    std::array<int, kMaxFieldOrder> inv_{};
};

/// F_q^n with points encoded little-endian in base q.
class VectorSpace {
public:
    VectorSpace(int q, int n);

    int q() const noexcept { return field_.order(); }
    int dim() const noexcept { return n_; }
    /// q^n
    Index size() const noexcept { return size_; }
    const Field& field() const noexcept { return field_; }

    Index add(Index a, Index b) const noexcept;
    Index sub(Index a, Index b) const noexcept;
    Index neg(Index a) const noexcept;
    Index scale(int c, Index a) const noexcept;
    /// a + c*b
    Index axpy(Index a, int c, Index b) const noexcept;

    int digit(Index x, int i) const noexcept;
    std::vector<int> digits(Index x) const;
    Index encode(std::span<const int> digits) const;
    int weight(Index x) const noexcept;
    /// Smallest index among the nonzero multiples of x (x itself when x = 0).
    Index projective_rep(Index x) const noexcept;

    bool operator==(const VectorSpace& o) const noexcept {
        return field_ == o.field_ && n_ == o.n_;
    }

private:
    Field field_;
    int n_;
    Index size_;
};

}  // namespace afflab
