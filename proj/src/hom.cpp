#include "afflab/hom.hpp"

#include <algorithm>
#include <cmath>

#include "afflab/parallel.hpp"
#include "afflab/rng.hpp"

namespace afflab {

namespace {

constexpr std::size_t kPlanLimit = std::size_t{1} << 22;        // cached offsets
constexpr std::size_t kTranslateBytes = std::size_t{1} << 26;   // precomputed A - s tables
constexpr std::uint64_t kChunksPerThread = 16;

// Linear independence of a growing list of vectors, one echelon basis per depth.
class IndependenceStack {
public:
    explicit IndependenceStack(const VectorSpace& sp) : sp_(sp) {}

    bool push(Index v) {
        if (v == 0) return false;
        if (sp_.q() == 2) {
            std::array<Index, 64> next = bits_.empty() ? std::array<Index, 64>{} : bits_.back();
            while (v) {
                const auto top = static_cast<std::size_t>(63 - std::countl_zero(v));
                if (!next[top]) {
                    next[top] = v;
                    bits_.push_back(next);
                    return true;
                }
                v ^= next[top];
            }
            return false;
        }
        EchelonBasis next = rows_.empty() ? EchelonBasis(sp_.field(), sp_.dim()) : rows_.back();
        if (!next.insert(sp_.digits(v))) return false;
        rows_.push_back(std::move(next));
        return true;
    }
    void pop() {
        if (sp_.q() == 2)
            bits_.pop_back();
        else
            rows_.pop_back();
    }

private:
    const VectorSpace& sp_;
    std::vector<std::array<Index, 64>> bits_;
    std::vector<EchelonBasis> rows_;
};

// Depth-first enumeration of non-degenerate homomorphisms B -> host with a
// fixed image z of the first basis point. Basis images are tried in
// increasing index order and each point of B is checked as soon as all the
// directions it uses are fixed.
class BasisSearch {
public:
    BasisSearch(const AffineConfiguration& b, const VectorSpace& sp, const PointSet& host)
        : sp_(sp), host_(host), pts_(host.indices()), free_(b.rank_affine() - 1),
          checks_(static_cast<std::size_t>(std::max(free_, 0))) {
        for (const auto& c : b.coords()) {
            int last = -1;
            for (int i = 0; i < free_; ++i)
                if (c[static_cast<std::size_t>(i)]) last = i;
            if (last >= 0) checks_[static_cast<std::size_t>(last)].push_back(c);
        }
    }

    // found(z, u) returns true to stop the search; run returns true if stopped.
    template <class Found>
    bool run(Index z, Found&& found) {
        u_.assign(static_cast<std::size_t>(free_), 0);
        IndependenceStack ind(sp_);
        return level(0, z, ind, found);
    }

private:
    template <class Found>
    bool level(int i, Index z, IndependenceStack& ind, Found& found) {
        if (i == free_) return found(z, std::span<const Index>(u_));
        for (Index y : pts_) {
            const Index u = sp_.sub(y, z);
            if (!ind.push(u)) continue;
            u_[static_cast<std::size_t>(i)] = u;
            bool ok = true;
            for (const auto& c : checks_[static_cast<std::size_t>(i)]) {
                Index x = z;
                for (int k = 0; k <= i; ++k)
                    if (c[static_cast<std::size_t>(k)]) x = sp_.axpy(x, c[static_cast<std::size_t>(k)], u_[static_cast<std::size_t>(k)]);
                if (!host_.contains(x)) {
                    ok = false;
                    break;
                }
            }
            const bool stop = ok && level(i + 1, z, ind, found);
            ind.pop();
            if (stop) return true;
        }
        return false;
    }

    const VectorSpace& sp_;
    const PointSet& host_;
    std::vector<Index> pts_;
    int free_;
    std::vector<std::vector<DigitVector>> checks_;
    std::vector<Index> u_;
};

void sort_unique(std::vector<Index>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

HomCounter::HomCounter(const AffineConfiguration& b, int n, const BigInt& budget)
    : b_(b), target_(b.q(), n), free_(b.rank_affine() - 1) {
    if (target_.size() > kMaxPointSetSize) throw DomainError("host space larger than 2^32 points");
    const BigInt N = target_.size();
    work_ = ipow(N, static_cast<unsigned>(b.rank_affine()));
    if (work_ > budget)
        throw BudgetExceeded("exact hom count needs N^r = " + work_.str() +
                                 " membership tests, above the budget of " + budget.str(),
                             work_);
    const BigInt tuples = ipow(N, static_cast<unsigned>(free_));
    if (tuples >= (BigInt(1) << 62)) throw BudgetExceeded("too many direction tuples", work_);
    tuples_ = static_cast<Index>(tuples);
    if (tuples_ * b_.size() > kPlanLimit) return;
    plan_begin_.reserve(tuples_ + 1);
    plan_nondeg_.reserve(tuples_);
    std::vector<Index> u(static_cast<std::size_t>(free_), 0);
    for (Index t = 0; t < tuples_; ++t) {
        Index rest = t;
        for (int i = free_ - 1; i >= 0; --i) {
            u[static_cast<std::size_t>(i)] = rest % target_.size();
            rest /= target_.size();
        }
        auto offs = span_offsets(b_, target_, u);
        sort_unique(offs);
        plan_begin_.push_back(static_cast<std::uint32_t>(plan_offsets_.size()));
        plan_offsets_.insert(plan_offsets_.end(), offs.begin(), offs.end());
        plan_nondeg_.push_back(linearly_independent(target_, u) ? 1 : 0);
    }
    plan_begin_.push_back(static_cast<std::uint32_t>(plan_offsets_.size()));
}

Index HomCounter::first_range() const noexcept { return free_ == 0 ? 1 : target_.size(); }

template <class Visit>
void HomCounter::for_each_tuple(Index lo, Index hi, Visit&& visit) const {
    const Index inner = free_ == 0 ? 1 : tuples_ / target_.size();
    if (!plan_begin_.empty()) {
        for (Index t = lo * inner; t < hi * inner; ++t) {
            const std::span<const Index> offs(plan_offsets_.data() + plan_begin_[t],
                                              plan_begin_[t + 1] - plan_begin_[t]);
            visit(offs, plan_nondeg_[t] != 0);
        }
        return;
    }
    std::vector<Index> u(static_cast<std::size_t>(free_), 0);
    std::vector<Index> offs(b_.size());
    std::vector<Index> distinct;
    const auto& coords = b_.coords();
    for (Index first = lo; first < hi; ++first) {
        if (free_ > 0) u[0] = first;
        for (Index t = 0; t < inner; ++t) {
            Index rest = t;
            for (int i = free_ - 1; i >= 1; --i) {
                u[static_cast<std::size_t>(i)] = rest % target_.size();
                rest /= target_.size();
            }
            for (std::size_t j = 0; j < coords.size(); ++j) {
                Index x = 0;
                for (int i = 0; i < free_; ++i) {
                    const int c = coords[j][static_cast<std::size_t>(i)];
                    if (c) x = target_.axpy(x, c, u[static_cast<std::size_t>(i)]);
                }
                offs[j] = x;
            }
            distinct.assign(offs.begin(), offs.end());
            sort_unique(distinct);
            visit(std::span<const Index>(distinct), linearly_independent(target_, u));
        }
    }
}

template <class Count>
HomTally HomCounter::reduce(Count&& count_tuple) const {
    const Index range = first_range();
    const std::uint64_t chunks = std::min<std::uint64_t>(range, thread_count() * kChunksPerThread);
    std::vector<HomTally> parts(chunks);
    parallel_chunks(chunks, [&](std::uint64_t c) {
        const Index lo = range * c / chunks;
        const Index hi = range * (c + 1) / chunks;
        HomTally local;
        for_each_tuple(lo, hi, [&](std::span<const Index> offs, bool nondeg) {
            const std::uint64_t k = count_tuple(offs);
            local.total += k;
            if (!nondeg) local.degenerate += k;
        });
        parts[c] = local;
    });
    HomTally sum;
    for (const auto& p : parts) sum += p;
    return sum;
}

HomTally HomCounter::count_scalar(const PointSet& a) const {
    if (!(a.space() == target_)) throw DomainError("host set lives in a different space");
    const auto pts = a.indices();
    return reduce([&](std::span<const Index> offs) {
        std::uint64_t k = 0;
        for (Index z : pts) {
            bool in = true;
            for (Index s : offs)
                if (!a.contains(target_.add(z, s))) {
                    in = false;
                    break;
                }
            k += in;
        }
        return k;
    });
}

HomTally HomCounter::count_bitset(const PointSet& a) const {
    if (!(a.space() == target_)) throw DomainError("host set lives in a different space");
    const auto words = a.words();
    const std::size_t nw = words.size();
    if (target_.q() == 2) {
        return reduce([&](std::span<const Index> offs) {
            std::uint64_t k = 0;
            for (std::size_t w = 0; w < nw; ++w) {
                std::uint64_t acc = ~std::uint64_t{0};
                for (Index s : offs) {
                    acc &= xor_permute_word(words[w ^ (s >> 6)], static_cast<unsigned>(s & 63));
                    if (!acc) break;
                }
                k += static_cast<std::uint64_t>(std::popcount(acc));
            }
            return k;
        });
    }
    if (target_.size() * nw * 8 > kTranslateBytes) return count_scalar(a);
    // minus[s] = A - s, i.e. { z : z + s in A }.
    std::vector<std::vector<std::uint64_t>> minus(target_.size());
    for (Index s = 0; s < target_.size(); ++s) {
        const PointSet t = a.translated(target_.neg(s));
        minus[s].assign(t.words().begin(), t.words().end());
    }
    return reduce([&](std::span<const Index> offs) {
        std::uint64_t k = 0;
        for (std::size_t w = 0; w < nw; ++w) {
            std::uint64_t acc = ~std::uint64_t{0};
            for (Index s : offs) {
                acc &= minus[s][w];
                if (!acc) break;
            }
            k += static_cast<std::uint64_t>(std::popcount(acc));
        }
        return k;
    });
}

HomTally HomCounter::count_mask(std::uint64_t mask) const {
    const Index N = target_.size();
    if (N > 64) throw DomainError("count_mask needs q^n <= 64");
    if (N < 64) mask &= (std::uint64_t{1} << N) - 1;
    std::array<std::uint64_t, 64> minus{};
    if (target_.q() == 2) {
        for (Index s = 0; s < N; ++s) minus[s] = xor_permute_word(mask, static_cast<unsigned>(s));
    } else {
        for (Index s = 0; s < N; ++s)
            for (Index z = 0; z < N; ++z)
                if (mask >> target_.add(z, s) & 1U) minus[s] |= std::uint64_t{1} << z;
    }
    HomTally sum;
    for_each_tuple(0, first_range(), [&](std::span<const Index> offs, bool nondeg) {
        std::uint64_t acc = mask;
        for (Index s : offs) acc &= minus[s];
        const auto k = static_cast<std::uint64_t>(std::popcount(acc));
        sum.total += k;
        if (!nondeg) sum.degenerate += k;
    });
    return sum;
}

HomTally HomCounter::count(const PointSet& a) const {
    if (!(a.space() == target_)) throw DomainError("host set lives in a different space");
    if (target_.size() <= 64) return count_mask(a.mask());
    if (a.size() * 8 < a.words().size()) return count_scalar(a);
    return count_bitset(a);
}

HomCountReport hom_count(const AffineConfiguration& b, const PointSet& a,
                         const HomCountOptions& options) {
    if (b.q() != a.q()) throw DomainError("configuration and host set use different fields");
    HomCountReport rep;
    rep.method = options.mode;
    if (options.mode == CountMode::monte_carlo) {
        if (options.samples == 0) throw DomainError("Monte-Carlo mode needs at least one sample");
        const VectorSpace& sp = a.space();
        const int free = b.rank_affine() - 1;
        constexpr std::uint64_t kBlock = 4096;
        const std::uint64_t blocks = (options.samples + kBlock - 1) / kBlock;
        std::vector<std::uint64_t> hits(blocks, 0);
        parallel_chunks(blocks, [&](std::uint64_t blk) {
            CounterRng rng(options.seed, blk);
            const std::uint64_t n = std::min(kBlock, options.samples - blk * kBlock);
            std::vector<Index> u(static_cast<std::size_t>(free));
            std::uint64_t h = 0;
            for (std::uint64_t i = 0; i < n; ++i) {
                const Index z = rng.below(sp.size());
                for (auto& x : u) x = rng.below(sp.size());
                bool in = true;
                for (Index off : span_offsets(b, sp, u))
                    if (!a.contains(sp.add(z, off))) {
                        in = false;
                        break;
                    }
                h += in;
            }
            hits[blk] = h;
        });
        rep.samples = options.samples;
        rep.seed = options.seed;
        for (auto h : hits) rep.hits += h;
        const long double scale = std::pow(static_cast<long double>(sp.size()), b.rank_affine());
        const long double p = static_cast<long double>(rep.hits) / options.samples;
        rep.estimate = p * scale;
        rep.std_error = scale * std::sqrt(p * (1 - p) / options.samples);
        return rep;
    }
    const HomTally t = HomCounter(b, a.dim(), options.budget).count(a);
    rep.total = t.total;
    rep.degenerate = t.degenerate;
    rep.nondegenerate = t.total - t.degenerate;
    if (options.with_automorphisms) {
        rep.aut_order = aut_order(b);
        AFFLAB_ENSURE(rep.nondegenerate % *rep.aut_order == 0,
                      "non-degenerate count not divisible by |Aut(B)|");
        rep.copies = rep.nondegenerate / *rep.aut_order;
    }
    return rep;
}

BigInt degenerate_hom_count(const AffineConfiguration& b, const PointSet& a, const BigInt& budget) {
    if (b.q() != a.q()) throw DomainError("configuration and host set use different fields");
    return HomCounter(b, a.dim(), budget).count(a).degenerate;
}

BigInt aut_order(const AffineConfiguration& b) {
    const PointSet host = b.as_point_set();
    BasisSearch search(b, b.space(), host);
    BigInt count = 0;
    for (Index z : b.point_indices())
        search.run(z, [&](Index, std::span<const Index>) {
            ++count;
            return false;
        });
    return count;
}

std::optional<AffineMap> find_copy(const AffineConfiguration& b, const PointSet& a) {
    if (b.q() != a.q()) throw DomainError("configuration and host set use different fields");
    BasisSearch search(b, a.space(), a);
    std::optional<AffineMap> out;
    for (Index z : a.indices()) {
        const bool hit = search.run(z, [&](Index zz, std::span<const Index> u) {
            out = AffineMap::from_basis_images(b, a.space(), zz, u);
            return true;
        });
        if (hit) break;
    }
    return out;
}

bool contains_copy(const AffineConfiguration& b, const PointSet& a) {
    return find_copy(b, a).has_value();
}

BigInt copy_count(const AffineConfiguration& b, const PointSet& a, const BigInt& budget) {
    if (b.q() != a.q()) throw DomainError("configuration and host set use different fields");
    const HomTally t = HomCounter(b, a.dim(), budget).count(a);
    const BigInt nondeg = BigInt(t.total) - t.degenerate;
    const BigInt aut = aut_order(b);
    AFFLAB_ENSURE(nondeg % aut == 0, "non-degenerate count not divisible by |Aut(B)|");
    return nondeg / aut;
}

CopyFinder::CopyFinder(const AffineConfiguration& b, const VectorSpace& target)
    : b_(b), target_(target) {
    if (b.q() != target.q()) throw DomainError("configuration and host space use different fields");
    // A copy through p maps some point of B to p; re-base B at every point.
    for (std::size_t i = 0; i < b.size(); ++i) {
        std::vector<std::size_t> order{i};
        for (std::size_t j = 0; j < b.size(); ++j)
            if (j != i) order.push_back(j);
        rooted_.push_back(b.permuted(order));
    }
}

bool CopyFinder::has_copy_through(const PointSet& a, Index p) const {
    for (const auto& rb : rooted_) {
        BasisSearch search(rb, target_, a);
        if (search.run(p, [](Index, std::span<const Index>) { return true; })) return true;
    }
    return false;
}

bool CopyFinder::has_copy(const PointSet& a) const {
    BasisSearch search(b_, target_, a);
    for (Index z : a.indices())
        if (search.run(z, [](Index, std::span<const Index>) { return true; })) return true;
    return false;
}

}  // namespace afflab
