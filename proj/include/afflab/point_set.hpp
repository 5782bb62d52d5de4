#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "afflab/field.hpp"

namespace afflab {

/// A subset of F_q^n stored as a bitset over the q^n encoded points.
class PointSet {
public:
    PointSet(int q, int n);
    explicit PointSet(const VectorSpace& space);

    static PointSet full(int q, int n);
    static PointSet from_indices(int q, int n, std::span<const Index> points);
    /// Bit i of mask is point i; requires q^n <= 64.
    static PointSet from_mask(int q, int n, std::uint64_t mask);

    const VectorSpace& space() const noexcept { return space_; }
    int q() const noexcept { return space_.q(); }
    int dim() const noexcept { return space_.dim(); }
    Index universe() const noexcept { return space_.size(); }

    bool contains(Index x) const noexcept {
        return (words_[x >> 6] >> (x & 63)) & 1U;
    }
    void insert(Index x);
    void erase(Index x);

    std::size_t size() const noexcept { return size_; }
    bool empty() const noexcept { return size_ == 0; }
    Rational density() const;

    std::vector<Index> indices() const;
    /// Smallest element; undefined on the empty set.
    Index front() const;
    std::uint64_t mask() const;  // requires q^n <= 64

    template <class F>
    void for_each(F&& f) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                f(static_cast<Index>(w * 64 + std::countr_zero(bits)));
                bits &= bits - 1;
            }
        }
    }

    /// { x + s : x in this }
    PointSet translated(Index s) const;
    PointSet complement() const;
    bool is_subset_of(const PointSet& other) const;

    PointSet& operator&=(const PointSet& o);
    PointSet& operator|=(const PointSet& o);
    friend PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }
    friend PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }

    std::span<const std::uint64_t> words() const noexcept { return words_; }

    bool operator==(const PointSet& o) const noexcept {
        return space_ == o.space_ && words_ == o.words_;
    }
    /// Lexicographic order on sorted index lists.
    bool lex_less(const PointSet& o) const;

private:
    void recount();

    VectorSpace space_;
    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
};

/// XOR-translate a 64-bit block: bit x moves to bit x ^ s, for s < 64.
std::uint64_t xor_permute_word(std::uint64_t w, unsigned s) noexcept;

}  // namespace afflab
