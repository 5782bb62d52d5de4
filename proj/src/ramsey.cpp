#include "afflab/ramsey.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>

#include "afflab/parallel.hpp"
#include "afflab/space.hpp"
#include "afflab/subspace.hpp"

namespace afflab {

namespace {

struct Stop {};

// Colors the projective points of F_q^n one at a time, in index order.
// Colors with equal targets are interchangeable, so a color may only be
// opened after the previous color of its group has been used.
class Colorer {
public:
    Colorer(int q, int n, const std::vector<int>& targets, std::atomic<std::uint64_t>& nodes,
            std::uint64_t budget)
        : sp_(q, n), targets_(targets), points_(projective_points(sp_)), nodes_(nodes), budget_(budget) {
        for (std::size_t c = 0; c < targets.size(); ++c) {
            classes_.emplace_back(sp_);
            prev_same_.push_back(-1);
            for (std::size_t d = c; d-- > 0;)
                if (targets[d] == targets[c]) {
                    prev_same_.back() = static_cast<int>(d);
                    break;
                }
        }
        used_.assign(targets.size(), 0);
    }

    std::size_t depth_total() const { return points_.size(); }
    void tick() {
        if (nodes_.fetch_add(1) >= budget_) throw Stop{};
    }
    const std::vector<int>& path() const { return path_; }

    // Colors permitted for the next point, in search order.
    bool allowed(int c) const {
        if (targets_[static_cast<std::size_t>(c)] <= 1) return false;  // any point is a 1-space
        const int prev = prev_same_[static_cast<std::size_t>(c)];
        return prev < 0 || used_[static_cast<std::size_t>(prev)] > 0;
    }

    // Assigns color c to the next point; false (and no change) if that
    // completes a monochromatic t_c-space.
    bool push(int c) {
        const Index p = points_[path_.size()];
        PointSet& cls = classes_[static_cast<std::size_t>(c)];
        for (int a = 1; a < sp_.q(); ++a) cls.insert(sp_.scale(a, p));
        if (contains_linear_subspace_through(cls, p, targets_[static_cast<std::size_t>(c)])) {
            for (int a = 1; a < sp_.q(); ++a) cls.erase(sp_.scale(a, p));
            return false;
        }
        ++used_[static_cast<std::size_t>(c)];
        path_.push_back(c);
        return true;
    }

    void pop() {
        const int c = path_.back();
        path_.pop_back();
        const Index p = points_[path_.size()];
        for (int a = 1; a < sp_.q(); ++a) classes_[static_cast<std::size_t>(c)].erase(sp_.scale(a, p));
        --used_[static_cast<std::size_t>(c)];
    }

    // Depth-first search below the current path. Levels shallower than
    // resume.size() start from the resumed color. abort() is polled per node.
    template <class Abort>
    bool dfs(const std::vector<int>& resume, Abort&& abort) {
        const std::size_t d = path_.size();
        // Ancestors of the resume point were already counted by earlier runs.
        const bool above_resume = d < resume.size() && std::equal(path_.begin(), path_.end(), resume.begin());
        if (!above_resume && nodes_.fetch_add(1) >= budget_) throw Stop{};
        if (abort()) return false;
        if (d == points_.size()) return true;
        for (int c = above_resume ? resume[d] : 0; c < static_cast<int>(targets_.size()); ++c) {
            if (!allowed(c) || !push(c)) continue;
            if (dfs(resume, abort)) return true;
            pop();
        }
        return false;
    }

    ColoringWitness witness() const {
        ColoringWitness w;
        w.q = sp_.q();
        w.n = sp_.dim();
        w.classes = classes_;
        return w;
    }

private:
    VectorSpace sp_;
    std::vector<int> targets_;
    std::vector<Index> points_;
    std::vector<PointSet> classes_;
    std::vector<int> prev_same_;
    std::vector<int> used_;
    std::vector<int> path_;
    std::atomic<std::uint64_t>& nodes_;
    std::uint64_t budget_;
};

// All valid color prefixes of the given depth, in DFS order.
void collect_prefixes(Colorer& c, std::size_t depth, std::vector<std::vector<int>>& out, int k) {
    c.tick();
    if (c.path().size() == depth) {
        out.push_back(c.path());
        return;
    }
    for (int col = 0; col < k; ++col) {
        if (!c.allowed(col) || !c.push(col)) continue;
        collect_prefixes(c, depth, out, k);
        c.pop();
    }
}

void validate_targets(int q, const std::vector<int>& targets) {
    if (!is_prime(q) || q > kMaxFieldOrder) throw DomainError("q must be a prime <= 13");
    if (targets.empty()) throw DomainError("at least one target is required");
    for (int t : targets)
        if (t < 1) throw DomainError("targets must be at least 1");
}

bool is_linear_subspace(const PointSet& s) {
    if (!s.contains(0)) return false;
    const VectorSpace& sp = s.space();
    bool ok = true;
    const auto pts = s.indices();
    for (Index a : pts) {
        for (Index b : pts) {
            for (int c = 1; c < sp.q(); ++c)
                if (!s.contains(sp.axpy(a, c, b))) {
                    ok = false;
                    break;
                }
            if (!ok) return false;
        }
    }
    return ok;
}

}  // namespace

std::vector<std::vector<Index>> ColoringWitness::representatives() const {
    std::vector<std::vector<Index>> out;
    for (const auto& c : classes) out.push_back(projective_support(c));
    return out;
}

bool ColoringWitness::is_partition() const {
    const VectorSpace sp(q, n);
    PointSet seen(sp);
    std::size_t total = 0;
    for (const auto& c : classes) {
        if (!(c.space() == sp) || !is_projectively_determined(c)) return false;
        if (!(c & seen).empty()) return false;
        seen |= c;
        total += c.size();
    }
    return total + 1 == sp.size() && !seen.contains(0);
}

bool ColoringWitness::avoids(const std::vector<int>& targets) const {
    if (targets.size() != classes.size()) return false;
    for (std::size_t i = 0; i < classes.size(); ++i)
        if (omega_linear(classes[i]) >= targets[i]) return false;
    return true;
}

ColoringSearchResult find_good_coloring(int q, int n, const std::vector<int>& targets,
                                        std::uint64_t node_budget, std::optional<RamseyFrontier> resume) {
    validate_targets(q, targets);
    if (resume && resume->n != n) throw DomainError("the frontier belongs to a different dimension");
    std::atomic<std::uint64_t> nodes{0};
    const int k = static_cast<int>(targets.size());
    ColoringSearchResult out;

    auto finish_found = [&](const Colorer& c) {
        out.outcome = ColoringSearchResult::Outcome::found;
        out.witness = c.witness();
        AFFLAB_ENSURE(out.witness->is_partition(), "coloring is not a partition");
        AFFLAB_ENSURE(out.witness->avoids(targets), "coloring has a monochromatic subspace");
    };

    if (resume) {
        // Resumed runs stay on one thread so the frontier semantics are simple.
        Colorer c(q, n, targets, nodes, node_budget);
        try {
            if (c.dfs(resume->colors, [] { return false; })) finish_found(c);
        } catch (const Stop&) {
            out.outcome = ColoringSearchResult::Outcome::exhausted;
            out.frontier = RamseyFrontier{n, c.path()};
        }
        out.nodes = nodes.load();
        return out;
    }

    // Split the tree into blocks at a fixed prefix depth; blocks are handed
    // out dynamically but the reported witness is the first in DFS order.
    Colorer root(q, n, targets, nodes, node_budget);
    const std::size_t depth = std::min<std::size_t>(root.depth_total(), k <= 2 ? 8 : 5);
    std::vector<std::vector<int>> prefixes;
    try {
        collect_prefixes(root, depth, prefixes, k);
    } catch (const Stop&) {
        out.outcome = ColoringSearchResult::Outcome::exhausted;
        out.frontier = RamseyFrontier{n, root.path()};
        out.nodes = nodes.load();
        return out;
    }

    const std::size_t blocks = prefixes.size();
    std::atomic<std::size_t> first_found{blocks};
    std::vector<std::uint8_t> finished(blocks, 0);
    std::vector<std::optional<std::vector<int>>> stopped(blocks);
    std::vector<std::optional<ColoringWitness>> found(blocks);
    std::atomic<bool> exhausted{false};
    parallel_chunks(blocks, [&](std::uint64_t b) {
        if (exhausted.load() || first_found.load() < b) return;
        Colorer c(q, n, targets, nodes, node_budget);
        for (int col : prefixes[b]) AFFLAB_ENSURE(c.push(col), "prefix no longer valid");
        try {
            const bool hit = c.dfs({}, [&] { return first_found.load() < b; });
            if (hit) {
                found[b] = c.witness();
                std::size_t cur = first_found.load();
                while (b < cur && !first_found.compare_exchange_weak(cur, b)) {
                }
            }
            finished[b] = first_found.load() >= b || hit;
        } catch (const Stop&) {
            exhausted = true;
            stopped[b] = c.path();
        }
    });
    out.nodes = nodes.load();
    // The answer is settled once every block up to the first hit has finished.
    for (std::size_t b = 0; b < blocks; ++b) {
        if (found[b]) {
            out.outcome = ColoringSearchResult::Outcome::found;
            out.witness = found[b];
            AFFLAB_ENSURE(out.witness->is_partition(), "coloring is not a partition");
            AFFLAB_ENSURE(out.witness->avoids(targets), "coloring has a monochromatic subspace");
            return out;
        }
        if (!finished[b]) {
            out.outcome = ColoringSearchResult::Outcome::exhausted;
            out.frontier = RamseyFrontier{n, stopped[b] ? *stopped[b] : prefixes[b]};
            return out;
        }
    }
    out.outcome = ColoringSearchResult::Outcome::none;
    return out;
}

RamseyReport ramsey_search(const RamseyQuery& query, std::optional<RamseyFrontier> resume) {
    validate_targets(query.q, query.targets);
    if (query.n_max < 0) throw DomainError("n_max must be nonnegative");
    const VectorSpace check(query.q, std::max(query.n_max, 0));
    if ((check.size() - 1) / static_cast<Index>(query.q - 1) > 63)
        throw DomainError("more than 63 projective points at n_max");
    const auto start = std::chrono::steady_clock::now();
    RamseyReport rep;
    rep.search.seed = query.seed;
    std::uint64_t left = query.node_budget;
    std::optional<ColoringWitness> last_good;
    rep.deepest_complete = -1;
    // A frontier at n means every smaller dimension already had a good
    // coloring, so a resumed run starts there.
    const int first = resume ? resume->n : 0;
    if (resume && (first < 0 || first > query.n_max)) throw DomainError("frontier dimension outside 0..n_max");
    if (first > 0) rep.deepest_complete = first - 1;
    for (int n = first; n <= query.n_max; ++n) {
        std::optional<RamseyFrontier> here;
        if (resume && resume->n == n) here = resume;
        const auto r = find_good_coloring(query.q, n, query.targets, left, here);
        rep.search.nodes += r.nodes;
        left = r.nodes >= left ? 0 : left - r.nodes;
        if (r.outcome == ColoringSearchResult::Outcome::exhausted) {
            rep.search.status = SearchStatus::unknown;
            rep.frontier = r.frontier;
            rep.lower_witness = last_good;
            break;
        }
        rep.deepest_complete = n;
        if (r.outcome == ColoringSearchResult::Outcome::none) {
            rep.search.status = SearchStatus::complete;
            rep.search.value = n;
            // Resumed at the deciding dimension: rebuild the witness one below,
            // which an earlier run already found.
            if (!last_good && n > 0)
                last_good = find_good_coloring(query.q, n - 1, query.targets, std::uint64_t{1} << 40).witness;
            rep.lower_witness = last_good;
            break;
        }
        last_good = r.witness;
        if (n == query.n_max) {
            rep.search.status = SearchStatus::greater_than;
            rep.search.value = n;
            rep.lower_witness = last_good;
        }
    }
    rep.search.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

BoseBurtonReport bose_burton(int q, int n, int t) {
    const VectorSpace sp(q, n);
    if (t < 1 || t > n) throw DomainError("bose_burton needs 1 <= t <= n");
    const auto points = projective_points(sp);
    if (points.size() > 40) throw DomainError("too many projective points for exhaustive search");
    BoseBurtonReport rep;
    rep.q = q;
    rep.n = n;
    rep.t = t;
    rep.formula = static_cast<long>((ipow(BigInt(q), static_cast<unsigned>(n)) -
                                     ipow(BigInt(q), static_cast<unsigned>(n - t + 1))) /
                                    (q - 1));
    rep.expected_maximizers = gaussian_binomial(q, n, n - t + 1);

    // All subsets of projective points with omega < t and maximum size;
    // ties are kept, so the bound prunes only strictly smaller branches.
    PointSet cur(sp);
    long size = 0;
    long best = -1;
    std::vector<PointSet> winners;
    auto dfs = [&](auto&& self, std::size_t i) -> void {
        const long room = size + static_cast<long>(points.size() - i);
        if (room < best) return;
        if (i == points.size()) {
            if (size > best) {
                best = size;
                winners.clear();
            }
            winners.push_back(cur);
            return;
        }
        const Index p = points[i];
        for (int a = 1; a < q; ++a) cur.insert(sp.scale(a, p));
        if (!contains_linear_subspace_through(cur, p, t)) {
            ++size;
            self(self, i + 1);
            --size;
        }
        for (int a = 1; a < q; ++a) cur.erase(sp.scale(a, p));
        self(self, i + 1);
    };
    dfs(dfs, 0);
    rep.max_size = best;
    rep.witnesses = std::move(winners);
    rep.formula_ok = rep.max_size == rep.formula;
    bool all_complements = true;
    const BigInt w_size = ipow(BigInt(q), static_cast<unsigned>(n - t + 1));
    for (const auto& w : rep.witnesses) {
        AFFLAB_ENSURE(omega_linear(w) < t, "maximizer contains a t-space");
        const PointSet comp = w.complement();
        all_complements = all_complements && BigInt(comp.size()) == w_size && is_linear_subspace(comp);
    }
    rep.uniqueness_ok = all_complements && BigInt(rep.witnesses.size()) == rep.expected_maximizers;
    return rep;
}

MqReport mq_search(int q, int t, int n_max, std::uint64_t node_budget) {
    if (t < 1) throw DomainError("t must be at least 1");
    const auto start = std::chrono::steady_clock::now();
    MqReport rep;
    std::uint64_t left = node_budget;
    // Sizes q^(n-t+1) are integral from n = t - 1 on; smaller n are skipped.
    for (int n = std::max(1, t - 1); n <= n_max; ++n) {
        const VectorSpace sp(q, n);
        const std::size_t want = static_cast<std::size_t>(ipow(BigInt(q), static_cast<unsigned>(n - t + 1)));
        MqDecision d;
        d.n = n;
        d.set_size = want;
        PointSet a(sp);
        PointSet dirs(sp);  // direction set of a, including 0 once a is nonempty
        std::uint64_t nodes = 0;
        // Adds y to a; returns the newly created directions for undo.
        auto add = [&](Index y) {
            std::vector<Index> fresh;
            a.insert(y);
            if (!dirs.contains(0)) {
                dirs.insert(0);
                fresh.push_back(0);
            }
            a.for_each([&](Index x) {
                if (x == y) return;
                const Index dir = sp.sub(y, x);
                if (dirs.contains(dir)) return;
                for (int c = 0; c < q; ++c)
                    if (!a.contains(sp.axpy(x, c, dir))) return;
                for (int c = 1; c < q; ++c) {
                    const Index m = sp.scale(c, dir);
                    if (!dirs.contains(m)) {
                        dirs.insert(m);
                        fresh.push_back(m);
                    }
                }
            });
            return fresh;
        };
        auto remove = [&](Index y, const std::vector<Index>& fresh) {
            a.erase(y);
            for (Index m : fresh) dirs.erase(m);
        };
        auto bad = [&](const std::vector<Index>& fresh) {
            for (Index m : fresh)
                if (m != 0 && contains_linear_subspace_through(dirs, m, t)) return true;
            return false;
        };
        bool out_of_budget = false;
        auto dfs = [&](auto&& self, Index next) -> bool {
            if (++nodes > left) {
                out_of_budget = true;
                return false;
            }
            if (a.size() == want) return true;
            for (Index y = next; y < sp.size(); ++y) {
                if (a.size() + (sp.size() - y) < want) return false;
                const auto fresh = add(y);
                if (!bad(fresh) && self(self, y + 1)) return true;
                remove(y, fresh);
                if (out_of_budget) return false;
            }
            return false;
        };
        // Translations and linear maps preserve omega_arrow, so a set of two
        // or more points may be assumed to contain 0 and e_1.
        bool hit = false;
        const auto f0 = add(0);
        if (!bad(f0)) {
            if (want == 1) {
                hit = true;
            } else {
                const auto f1 = add(1);
                if (!bad(f1)) hit = dfs(dfs, 2);
                if (!hit) remove(1, f1);
            }
        }
        d.nodes = nodes;
        d.exhausted = out_of_budget;
        left = nodes >= left ? 0 : left - nodes;
        if (hit) {
            d.witness_exists = true;
            d.witness = a;
            AFFLAB_ENSURE(a.size() == want && omega_arrow(a) < t, "m_q witness failed re-verification");
        }
        rep.search.nodes += nodes;
        rep.decisions.push_back(d);
        if (d.exhausted) {
            rep.search.status = SearchStatus::unknown;
            break;
        }
        if (!hit) {
            rep.search.status = SearchStatus::complete;
            rep.search.value = n;
            break;
        }
        if (n == n_max) {
            rep.search.status = SearchStatus::greater_than;
            rep.search.value = n;
            rep.search.witness = d.witness;
        }
    }
    if (rep.decisions.empty()) {
        rep.search.status = SearchStatus::greater_than;
        rep.search.value = n_max;
    }
    rep.search.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

std::vector<RecurrenceCheck> check_recurrence(const std::map<std::vector<int>, int>& values) {
    auto lookup = [&](std::vector<int> key) -> std::optional<int> {
        std::sort(key.begin(), key.end());
        const auto it = values.find(key);
        if (it == values.end()) return std::nullopt;
        return it->second;
    };
    std::vector<RecurrenceCheck> out;
    for (const auto& [tuple, value] : values) {
        if (tuple.size() < 3) continue;
        const std::size_t k = tuple.size();
        const auto inner = lookup({tuple[k - 2], tuple[k - 1]});
        if (!inner) continue;
        std::vector<int> reduced(tuple.begin(), tuple.end() - 2);
        reduced.push_back(*inner);
        const auto outer = lookup(reduced);
        if (!outer) continue;
        out.push_back(RecurrenceCheck{tuple, value, reduced, *outer, value <= *outer});
    }
    return out;
}

}  // namespace afflab
