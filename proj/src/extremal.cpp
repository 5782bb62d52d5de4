#include "afflab/extremal.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>

#include "afflab/bounds.hpp"
#include "afflab/hom.hpp"
#include "afflab/oracle.hpp"
#include "afflab/parallel.hpp"
#include "afflab/rng.hpp"

namespace afflab {

namespace {

constexpr Index kExactSpaceLimit = Index{1} << 20;

struct Stop {};

struct Shared {
    std::atomic<long> best{0};
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> exhausted{false};
    std::uint64_t budget = 0;
};

// Branch and bound over subsets in increasing index order. Candidates are
// the points that can still be added without completing a forbidden copy.
class FreeSetSearch {
public:
    FreeSetSearch(const std::vector<CopyFinder>& finders, const VectorSpace& sp, Shared& shared)
        : finders_(finders), sp_(sp), shared_(shared) {}

    long target = -1;  // decision mode; -1 maximizes
    int min_weight = 0;  // every pairwise difference must have at least this weight
    std::optional<PointSet> witness;  // decision mode only

    bool allowed(PointSet& a, Index y) const {
        if (min_weight > 1) {
            bool ok = true;
            a.for_each([&](Index x) { ok = ok && sp_.weight(sp_.sub(y, x)) >= min_weight; });
            if (!ok) return false;
        }
        a.insert(y);
        bool free = true;
        for (const auto& f : finders_)
            if (f.has_copy_through(a, y)) {
                free = false;
                break;
            }
        a.erase(y);
        return free;
    }

    std::vector<Index> filter(PointSet& a, const std::vector<Index>& cands, std::size_t from) const {
        std::vector<Index> out;
        for (std::size_t i = from; i < cands.size(); ++i)
            if (allowed(a, cands[i])) out.push_back(cands[i]);
        return out;
    }

    // Returns true when a decision target has been met.
    bool dfs(PointSet& a, const std::vector<Index>& cands) {
        if (shared_.nodes.fetch_add(1) >= shared_.budget) {
            shared_.exhausted = true;
            throw Stop{};
        }
        const long size = static_cast<long>(a.size());
        if (target >= 0) {
            if (size >= target) {
                witness = a;
                return true;
            }
        } else {
            long cur = shared_.best.load();
            while (size > cur && !shared_.best.compare_exchange_weak(cur, size)) {
            }
        }
        for (std::size_t i = 0; i < cands.size(); ++i) {
            const long room = size + static_cast<long>(cands.size() - i);
            if (target >= 0 ? room < target : room <= shared_.best.load()) break;
            const Index x = cands[i];
            a.insert(x);
            const auto next = filter(a, cands, i + 1);
            const bool stop = dfs(a, next);
            a.erase(x);
            if (stop) return true;
        }
        return false;
    }

private:
    const std::vector<CopyFinder>& finders_;
    const VectorSpace& sp_;
    Shared& shared_;
};

// A search root. With symmetry, w is the minimum difference weight and the
// set contains 0 and (1, ..., 1, 0, ..., 0) with w ones.
struct Root {
    int w = 0;
    std::vector<Index> fixed;
    std::vector<Index> cands;
};

std::vector<Root> make_roots(bool symmetry, const std::vector<CopyFinder>& finders,
                             const VectorSpace& sp) {
    Shared scratch;
    FreeSetSearch probe(finders, sp, scratch);
    std::vector<Root> roots;
    if (!symmetry) {
        Root r;
        for (Index x = 0; x < sp.size(); ++x) r.cands.push_back(x);
        PointSet empty(sp);
        r.cands = probe.filter(empty, r.cands, 0);
        roots.push_back(std::move(r));
        return roots;
    }
    // Any free set with two or more points has a closest pair; translating
    // one end to 0 and applying a monomial map puts the other end at p_w.
    for (int w = 1; w <= sp.dim(); ++w) {
        Root r;
        r.w = w;
        Index p = 0;
        for (int i = 0; i < w; ++i) p = p * static_cast<Index>(sp.q()) + 1;
        r.fixed = {0, p};
        PointSet a(sp);
        if (!probe.allowed(a, 0)) continue;
        a.insert(0);
        if (!probe.allowed(a, p)) continue;
        a.insert(p);
        probe.min_weight = w;
        std::vector<Index> all;
        for (Index x = 1; x < sp.size(); ++x)
            if (x != p) all.push_back(x);
        r.cands = probe.filter(a, all, 0);
        probe.min_weight = 0;
        roots.push_back(std::move(r));
    }
    return roots;
}

bool singleton_forbidden(const std::vector<AffineConfiguration>& family) {
    for (const auto& b : family)
        if (b.rank_affine() <= 1) return true;
    return false;
}

std::vector<CopyFinder> make_finders(const std::vector<AffineConfiguration>& family,
                                     const VectorSpace& sp) {
    std::vector<CopyFinder> out;
    for (const auto& b : family) out.emplace_back(b, sp);
    return out;
}

// Single-threaded run that stops at the first free set of the given size in
// canonical order. Sets exhausted when the node budget ran out first.
std::optional<PointSet> first_of_size(const ExtremalQuery& q, const VectorSpace& sp, long size,
                                      std::uint64_t budget, std::uint64_t& nodes, bool& exhausted) {
    exhausted = false;
    if (size <= 0) return PointSet(sp);
    if (singleton_forbidden(q.family)) return std::nullopt;
    if (size == 1) {
        PointSet one(sp);
        one.insert(0);
        return one;
    }
    const auto finders = make_finders(q.family, sp);
    Shared shared;
    shared.budget = budget;
    FreeSetSearch s(finders, sp, shared);
    s.target = size;
    const auto roots = make_roots(q.symmetry, finders, sp);
    try {
        for (const auto& r : roots) {
            PointSet a(sp);
            for (Index x : r.fixed) a.insert(x);
            s.min_weight = r.w;
            if (s.dfs(a, r.cands)) break;
        }
    } catch (const Stop&) {
    }
    nodes += shared.nodes.load();
    exhausted = shared.exhausted.load();
    return s.witness;
}

}  // namespace

bool is_family_free(const std::vector<AffineConfiguration>& family, const PointSet& a) {
    for (const auto& b : family)
        if (contains_copy(b, a)) return false;
    return true;
}

SearchReport ex_aff(const ExtremalQuery& query) {
    const auto start = std::chrono::steady_clock::now();
    if (query.family.empty()) throw DomainError("the forbidden family is empty");
    for (const auto& b : query.family)
        if (b.q() != query.q) throw DomainError("family members must share the field of the query");
    const VectorSpace sp(query.q, query.n);
    if (query.mode == ExtremalQuery::Mode::exact && sp.size() > kExactSpaceLimit)
        throw DomainError("exact mode is limited to q^n <= 2^20");
    if (sp.size() > kMaxPointSetSize) throw DomainError("q^n exceeds 2^32");

    SearchReport rep;
    rep.seed = query.seed;
    auto finish = [&] {
        rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return rep;
    };

    if (query.mode == ExtremalQuery::Mode::decision) {
        bool exhausted = false;
        auto w = first_of_size(query, sp, query.target, query.node_budget, rep.nodes, exhausted);
        if (w) {
            rep.value = query.target;
            rep.witness = w;
        }
        rep.status = (!w && exhausted) ? SearchStatus::incomplete : SearchStatus::complete;
        return finish();
    }

    const auto finders = make_finders(query.family, sp);

    if (query.mode == ExtremalQuery::Mode::lower_only) {
        // Randomised greedy restarts: shuffle the points and keep whatever stays free.
        constexpr int kRestarts = 64;
        CounterRng rng(query.seed, 0x10e5);
        std::optional<PointSet> best;
        std::vector<Index> order(sp.size());
        for (Index x = 0; x < sp.size(); ++x) order[x] = x;
        for (int round = 0; round < kRestarts && rep.nodes < query.node_budget; ++round) {
            for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
            PointSet a(sp);
            for (Index x : order) {
                if (++rep.nodes > query.node_budget) break;
                a.insert(x);
                for (const auto& f : finders)
                    if (f.has_copy_through(a, x)) {
                        a.erase(x);
                        break;
                    }
            }
            if (!best || a.size() > best->size()) best = a;
        }
        rep.status = SearchStatus::incomplete;
        rep.value = best ? static_cast<long>(best->size()) : 0;
        rep.witness = best;
        return finish();
    }

    if (singleton_forbidden(query.family)) {
        rep.value = 0;
        rep.witness = PointSet(sp);
        return finish();
    }
    Shared shared;
    shared.budget = query.node_budget;
    shared.best = 1;
    const auto roots = make_roots(query.symmetry, finders, sp);
    // One task per (root, first added candidate).
    std::vector<std::pair<std::size_t, std::size_t>> tasks;
    for (std::size_t r = 0; r < roots.size(); ++r) {
        shared.best = std::max<long>(shared.best.load(), static_cast<long>(roots[r].fixed.size()));
        for (std::size_t i = 0; i < roots[r].cands.size(); ++i) tasks.emplace_back(r, i);
    }
    parallel_chunks(tasks.size(), [&](std::uint64_t t) {
        if (shared.exhausted.load()) return;
        const auto [r, i] = tasks[t];
        const Root& root = roots[r];
        const long base = static_cast<long>(root.fixed.size()) + 1;
        if (base + static_cast<long>(root.cands.size() - i - 1) <= shared.best.load()) return;
        FreeSetSearch task(finders, sp, shared);
        task.min_weight = root.w;
        PointSet a(sp);
        for (Index x : root.fixed) a.insert(x);
        a.insert(root.cands[i]);
        try {
            task.dfs(a, task.filter(a, root.cands, i + 1));
        } catch (const Stop&) {
        }
    });
    rep.nodes = shared.nodes.load();
    const long best = shared.best.load();
    rep.value = best;
    if (shared.exhausted.load()) {
        rep.status = SearchStatus::incomplete;
        return finish();
    }
    // Deterministic witness: first free set of the optimal size in canonical order.
    bool exhausted = false;
    const std::uint64_t budget = std::max<std::uint64_t>(query.node_budget, 4 * rep.nodes + 1024);
    rep.witness = first_of_size(query, sp, best, budget, rep.nodes, exhausted);
    AFFLAB_ENSURE(rep.witness.has_value(), "optimal value has no witness on rerun");
    AFFLAB_ENSURE(is_family_free(query.family, *rep.witness), "witness contains a forbidden copy");
    rep.status = SearchStatus::complete;
    return finish();
}

BoundCheckReport check_bound_formulas(int q, int t, int n, long exact, const Rational& sigma) {
    BoundCheckReport rep;
    rep.q = q;
    rep.t = t;
    rep.n = n;
    rep.exact = exact;
    BoundOptions opt;
    if (q == 3) opt.sidorenko.sigma3 = sigma;
    BoundParams p;
    p.set("q", q);
    p.set("t", t);
    p.set("n", n);
    rep.thm42_rhs = eval_bound(BoundId::thm42_rhs, p, opt).approx();
    rep.below_thm42 = static_cast<long double>(exact) < rep.thm42_rhs;
    rep.thm42_slack = rep.thm42_rhs - exact;
    rep.eq1_applicable = n >= t;
    if (rep.eq1_applicable) {
        rep.eq1_rhs = eval_bound(BoundId::eq1_rhs, p, opt).approx();
        rep.below_eq1 = static_cast<long double>(exact) < rep.eq1_rhs;
        rep.eq1_slack = rep.eq1_rhs - exact;
    }
    return rep;
}

ExtractionResult extract_subconfig(const AffineConfiguration& b, const PointSet& a, const BigInt& budget) {
    if (b.q() != a.q()) throw DomainError("configuration and host set use different fields");
    const VectorSpace& sp = a.space();
    const Field& f = sp.field();
    const int n = sp.dim();
    const int free = b.rank_affine() - 1;
    if (free > n) throw DomainError("no non-degenerate homomorphisms: rank_aff(B) - 1 exceeds n");
    const BigInt tuples = ipow(BigInt(sp.size()), static_cast<unsigned>(free));
    const BigInt work = tuples * sp.size();
    if (work > budget) throw BudgetExceeded("extraction needs N^r = " + work.str() + " steps", work);
    const Index classes = static_cast<Index>(ipow(BigInt(sp.q()), static_cast<unsigned>(free)));

    const VectorSpace sub(sp.q(), n - free);
    std::optional<ExtractionResult> best;
    BigInt nondeg = 0;
    std::vector<Index> u(static_cast<std::size_t>(free), 0);
    const auto total = static_cast<Index>(tuples);
    for (Index t = 0; t < total; ++t) {
        Index rest = t;
        for (int i = free - 1; i >= 0; --i) {
            u[static_cast<std::size_t>(i)] = rest % sp.size();
            rest /= sp.size();
        }
        if (!linearly_independent(sp, u)) continue;
        // S_u as the set of images of x_0.
        PointSet s = a;
        for (Index off : span_offsets(b, sp, u)) s &= a.translated(sp.neg(off));
        if (s.empty()) continue;
        nondeg += s.size();
        // Complete u with standard vectors; those span W_u.
        EchelonBasis eb(f, n);
        std::vector<DigitVector> cols;
        for (Index x : u) {
            cols.push_back(sp.digits(x));
            eb.insert(cols.back());
        }
        std::vector<int> w_coords;
        for (int j = 0; j < n; ++j) {
            DigitVector e(static_cast<std::size_t>(n), 0);
            e[static_cast<std::size_t>(j)] = 1;
            if (eb.insert(e)) {
                cols.push_back(e);
                w_coords.push_back(j);
            }
        }
        std::vector<std::size_t> per_class(classes, 0);
        std::vector<std::vector<Index>> members(classes);
        s.for_each([&](Index z) {
            const auto coef = solve_combination(f, cols, sp.digits(z));
            AFFLAB_ENSURE(coef.has_value(), "completed basis does not span F_q^n");
            Index j = 0;
            for (int i = free - 1; i >= 0; --i) j = j * static_cast<Index>(sp.q()) + static_cast<Index>((*coef)[static_cast<std::size_t>(i)]);
            DigitVector wdig(w_coords.size());
            for (std::size_t k = 0; k < w_coords.size(); ++k) wdig[k] = (*coef)[static_cast<std::size_t>(free) + k];
            ++per_class[j];
            members[j].push_back(sub.encode(wdig));
        });
        for (Index j = 0; j < classes; ++j) {
            if (best && per_class[j] <= best->s_size) continue;
            // The coset is sum_i c_i u_i + W_u with c the base-q digits of j.
            Subspace w;
            w.q = sp.q();
            w.n = n;
            for (int c : w_coords) w.basis.push_back(static_cast<Index>(ipow(BigInt(sp.q()), static_cast<unsigned>(c))));
            Index jj = j;
            for (int i = 0; i < free; ++i) {
                w.offset = sp.axpy(w.offset, static_cast<int>(jj % static_cast<Index>(sp.q())), u[static_cast<std::size_t>(i)]);
                jj /= static_cast<Index>(sp.q());
            }
            best = ExtractionResult{u, j, std::move(w),
                                    PointSet::from_indices(sub.q(), sub.dim(), members[j]), per_class[j], 0};
        }
    }
    if (!best) throw DomainError("no non-degenerate homomorphisms from B into A");
    best->nondegenerate = nondeg;
    const BigInt denom = BigInt(classes) * tuples;
    AFFLAB_ENSURE(BigInt(best->s_size) * denom >= nondeg, "pigeonhole guarantee violated");
    return *best;
}

long ex_aff_brute_force(const std::vector<AffineConfiguration>& family, int q, int n) {
    const VectorSpace sp(q, n);
    if (sp.size() > 20) throw DomainError("brute force limited to q^n <= 20");
    long best = 0;
    const std::uint64_t total = std::uint64_t{1} << sp.size();
    for (std::uint64_t m = 0; m < total; ++m) {
        const auto k = static_cast<long>(std::popcount(m));
        if (k <= best) continue;
        const PointSet a = PointSet::from_mask(q, n, m);
        bool free = true;
        for (const auto& b : family)
            if (!oracle::is_free(b, a)) {
                free = false;
                break;
            }
        if (free) best = k;
    }
    return best;
}

}  // namespace afflab
