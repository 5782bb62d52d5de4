#include "afflab/point_set.hpp"

#include <algorithm>

namespace afflab {

namespace {

std::size_t word_count(const VectorSpace& s) {
    if (s.size() > kMaxPointSetSize)
        throw DomainError("point sets are limited to 2^32 points, F_" + std::to_string(s.q()) + "^" +
                          std::to_string(s.dim()) + " has more");
    return static_cast<std::size_t>((s.size() + 63) / 64);
}

}  // namespace

std::uint64_t xor_permute_word(std::uint64_t w, unsigned s) noexcept {
    static constexpr std::uint64_t kLow[6] = {
        0x5555555555555555ULL, 0x3333333333333333ULL, 0x0f0f0f0f0f0f0f0fULL,
        0x00ff00ff00ff00ffULL, 0x0000ffff0000ffffULL, 0x00000000ffffffffULL,
    };
    for (unsigned k = 0; k < 6; ++k) {
        if (s >> k & 1U) {
            const unsigned sh = 1U << k;
            w = ((w & kLow[k]) << sh) | ((w >> sh) & kLow[k]);
        }
    }
    return w;
}

PointSet::PointSet(const VectorSpace& space) : space_(space), words_(word_count(space), 0) {}

PointSet::PointSet(int q, int n) : PointSet(VectorSpace(q, n)) {}

PointSet PointSet::full(int q, int n) {
    PointSet s(q, n);
    const Index N = s.universe();
    for (std::size_t w = 0; w < s.words_.size(); ++w) {
        const Index lo = w * 64;
        const Index take = std::min<Index>(64, N - lo);
        s.words_[w] = take == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << take) - 1);
    }
    s.size_ = static_cast<std::size_t>(N);
    return s;
}

PointSet PointSet::from_indices(int q, int n, std::span<const Index> points) {
    PointSet s(q, n);
    for (Index x : points) s.insert(x);
    return s;
}

PointSet PointSet::from_mask(int q, int n, std::uint64_t mask) {
    PointSet s(q, n);
    if (s.universe() > 64) throw DomainError("from_mask needs q^n <= 64");
    if (s.universe() < 64) mask &= (std::uint64_t{1} << s.universe()) - 1;
    s.words_[0] = mask;
    s.size_ = static_cast<std::size_t>(std::popcount(mask));
    return s;
}

void PointSet::insert(Index x) {
    if (x >= universe()) throw DomainError("point " + std::to_string(x) + " outside F_q^n");
    std::uint64_t& w = words_[x >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (x & 63);
    if (!(w & bit)) {
        w |= bit;
        ++size_;
    }
}

void PointSet::erase(Index x) {
    if (x >= universe()) return;
    std::uint64_t& w = words_[x >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (x & 63);
    if (w & bit) {
        w &= ~bit;
        --size_;
    }
}

Rational PointSet::density() const {
    return Rational(BigInt(size_), BigInt(universe()));
}

std::vector<Index> PointSet::indices() const {
    std::vector<Index> out;
    out.reserve(size_);
    for_each([&](Index x) { out.push_back(x); });
    return out;
}

Index PointSet::front() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w]) return w * 64 + static_cast<Index>(std::countr_zero(words_[w]));
    return universe();
}

std::uint64_t PointSet::mask() const {
    if (universe() > 64) throw DomainError("mask() needs q^n <= 64");
    return words_[0];
}

PointSet PointSet::translated(Index s) const {
    PointSet out(space_);
    if (q() == 2) {
        const Index hi = s >> 6;
        const auto lo = static_cast<unsigned>(s & 63);
        for (std::size_t w = 0; w < words_.size(); ++w)
            if (words_[w]) out.words_[w ^ hi] = xor_permute_word(words_[w], lo);
        out.size_ = size_;
        return out;
    }
    for_each([&](Index x) { out.insert(space_.add(x, s)); });
    return out;
}

PointSet PointSet::complement() const {
    PointSet out = full(q(), dim());
    for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] &= ~words_[w];
    out.size_ = static_cast<std::size_t>(universe()) - size_;
    return out;
}

bool PointSet::is_subset_of(const PointSet& other) const {
    if (!(space_ == other.space_)) throw DomainError("point sets live in different spaces");
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w] & ~other.words_[w]) return false;
    return true;
}

PointSet& PointSet::operator&=(const PointSet& o) {
    if (!(space_ == o.space_)) throw DomainError("point sets live in different spaces");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= o.words_[w];
    recount();
    return *this;
}

PointSet& PointSet::operator|=(const PointSet& o) {
    if (!(space_ == o.space_)) throw DomainError("point sets live in different spaces");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= o.words_[w];
    recount();
    return *this;
}

bool PointSet::lex_less(const PointSet& o) const {
    const auto a = indices();
    const auto b = o.indices();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void PointSet::recount() {
    size_ = 0;
    for (auto w : words_) size_ += static_cast<std::size_t>(std::popcount(w));
}

}  // namespace afflab
