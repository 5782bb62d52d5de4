#pragma once

#include <optional>
#include <vector>

#include "afflab/config.hpp"
#include "afflab/point_set.hpp"

namespace afflab {

inline const BigInt kDefaultWorkBudget = BigInt(1) << 36;

enum class CountMode { exact, monte_carlo };

struct HomCountOptions {
    CountMode mode = CountMode::exact;
    std::uint64_t samples = 100000;
    std::uint64_t seed = 0;
    BigInt budget = kDefaultWorkBudget;
    bool with_automorphisms = true;
};

struct HomCountReport {
    CountMode method = CountMode::exact;
    // Exact mode.
    BigInt total;
    BigInt degenerate;
    BigInt nondegenerate;
    std::optional<BigInt> aut_order;
    std::optional<BigInt> copies;
    // Monte-Carlo mode.
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t hits = 0;
    long double estimate = 0;
    long double std_error = 0;
};

struct HomTally {
    std::uint64_t total = 0;
    std::uint64_t degenerate = 0;
    HomTally& operator+=(const HomTally& o) noexcept {
        total += o.total;
        degenerate += o.degenerate;
        return *this;
    }
    bool operator==(const HomTally&) const = default;
};

/// Counts affine homomorphisms B -> A as pairs (z, u) with z + span_B(u) in A.
///
/// The direction tuples u range over (F_q^n)^(r-1) in the outer loop; for
/// each one every distinct offset s of span_B(u) is applied to A and the
/// valid z are those in the intersection of the translates A - s. Three
/// interchangeable back ends exist and must agree exactly.
class HomCounter {
public:
    HomCounter(const AffineConfiguration& b, int n, const BigInt& budget = kDefaultWorkBudget);

    const AffineConfiguration& config() const noexcept { return b_; }
    const VectorSpace& target() const noexcept { return target_; }

    /// Picks the fastest applicable back end.
    HomTally count(const PointSet& a) const;
    /// Membership test per (z, u), z ranging over A.
    HomTally count_scalar(const PointSet& a) const;
    /// Word-parallel intersection of precomputed translates.
    HomTally count_bitset(const PointSet& a) const;
    /// Single-word variant; requires q^n <= 64.
    HomTally count_mask(std::uint64_t mask) const;

    /// N^r
    const BigInt& work() const noexcept { return work_; }

private:
    // Calls visit(offsets, nondegenerate) for every u with u_1 in [lo, hi).
    template <class Visit>
    void for_each_tuple(Index lo, Index hi, Visit&& visit) const;
    Index first_range() const noexcept;
    template <class Count>
    HomTally reduce(Count&& count_tuple) const;

    AffineConfiguration b_;
    VectorSpace target_;
    BigInt work_;
    int free_ = 0;  // r - 1
    Index tuples_ = 1;
    // Cached per-tuple distinct offsets and nondegeneracy, when small enough.
    std::vector<std::uint32_t> plan_begin_;
    std::vector<Index> plan_offsets_;
    std::vector<std::uint8_t> plan_nondeg_;
};

HomCountReport hom_count(const AffineConfiguration& b, const PointSet& a,
                         const HomCountOptions& options = {});

BigInt degenerate_hom_count(const AffineConfiguration& b, const PointSet& a,
                            const BigInt& budget = kDefaultWorkBudget);

/// |Aut_aff(B)|, counted as non-degenerate maps of B onto its own point set.
BigInt aut_order(const AffineConfiguration& b);

/// First non-degenerate homomorphism B -> A in lexicographic order of the
/// basis images, if any.
std::optional<AffineMap> find_copy(const AffineConfiguration& b, const PointSet& a);
bool contains_copy(const AffineConfiguration& b, const PointSet& a);
BigInt copy_count(const AffineConfiguration& b, const PointSet& a,
                  const BigInt& budget = kDefaultWorkBudget);

/// Incremental freeness checks: does A contain a copy of B through p?
class CopyFinder {
public:
    CopyFinder(const AffineConfiguration& b, const VectorSpace& target);
    /// Assumes p is in a.
    bool has_copy_through(const PointSet& a, Index p) const;
    bool has_copy(const PointSet& a) const;

private:
    AffineConfiguration b_;
    VectorSpace target_;
    std::vector<AffineConfiguration> rooted_;  // one re-basing per distinct root
};

}  // namespace afflab
