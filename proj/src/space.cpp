#include "afflab/space.hpp"

#include <algorithm>

namespace afflab {

namespace {

bool has_all_multiples(const PointSet& s, const VectorSpace& sp, Index v) {
    for (int c = 1; c < sp.q(); ++c)
        if (!s.contains(sp.scale(c, v))) return false;
    return true;
}

// Depth-first search over linear subspaces inside s union {0}. Basis vectors
// are added in increasing index order; choosing each next basis vector as the
// smallest element outside the current span shows every subspace is reached.
class LinearSearch {
public:
    LinearSearch(const PointSet& s, int target) : s_(s), sp_(s.space()), target_(target) {}

    int best = 0;

    // Returns true once the target dimension is reached.
    bool run(std::vector<Index>& elems, int k, const std::vector<Index>& cands) {
        best = std::max(best, k);
        if (target_ >= 0 && best >= target_) return true;
        const int q = sp_.q();
        for (std::size_t i = 0; i < cands.size(); ++i) {
            // The new basis vectors all come from cands[i..], and a space of
            // dimension best+1 needs (q^(best+1) - q^k)/(q-1) of them.
            const int goal = target_ >= 0 ? target_ : best + 1;
            if (goal > sp_.dim()) return false;
            const BigInt need = (ipow(BigInt(q), static_cast<unsigned>(goal)) -
                                 ipow(BigInt(q), static_cast<unsigned>(k))) / (q - 1);
            if (BigInt(cands.size() - i) < need) return false;

            const Index v = cands[i];
            const std::size_t old = elems.size();
            for (int c = 1; c < q; ++c)
                for (std::size_t j = 0; j < old; ++j) elems.push_back(sp_.axpy(elems[j], c, v));
            std::vector<Index> next;
            for (std::size_t j = i + 1; j < cands.size(); ++j) {
                const Index u = cands[j];
                if (std::find(elems.begin(), elems.end(), u) != elems.end()) continue;
                bool ok = true;
                for (std::size_t e = old; e < elems.size() && ok; ++e)
                    for (int c = 1; c < q && ok; ++c) ok = s_.contains(sp_.axpy(elems[e], c, u));
                if (ok) next.push_back(u);
            }
            const bool done = run(elems, k + 1, next);
            elems.resize(old);
            if (done) return true;
        }
        return false;
    }

private:
    const PointSet& s_;
    const VectorSpace& sp_;
    int target_;
};

std::vector<Index> candidate_lines(const PointSet& s) {
    const auto& sp = s.space();
    std::vector<Index> out;
    s.for_each([&](Index v) {
        if (v != 0 && sp.projective_rep(v) == v && has_all_multiples(s, sp, v)) out.push_back(v);
    });
    return out;
}

int omega_linear_from(const PointSet& s, int floor) {
    LinearSearch search(s, -1);
    search.best = floor;
    std::vector<Index> elems{0};
    search.run(elems, 0, candidate_lines(s));
    return search.best;
}

}  // namespace

int omega_linear(const PointSet& s) { return omega_linear_from(s, 0); }

std::optional<int> omega_affine(const PointSet& s) {
    if (s.empty()) return std::nullopt;
    const auto& sp = s.space();
    int best = 0;
    for (Index x : s.indices()) {
        PointSet shifted(sp);
        s.for_each([&](Index y) { shifted.insert(sp.sub(y, x)); });
        best = std::max(best, omega_linear_from(shifted, best));
        if (best == sp.dim()) break;
    }
    return best;
}

PointSet direction_set(const PointSet& s) {
    const auto& sp = s.space();
    PointSet d(sp);
    if (s.empty()) return d;
    if (sp.q() == 2) {
        s.for_each([&](Index x) { d |= s.translated(x); });
        return d;
    }
    d.insert(0);
    const auto pts = s.indices();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const Index dir = sp.sub(pts[j], pts[i]);
            if (d.contains(dir)) continue;
            bool line = true;
            for (int c = 2; c < sp.q() && line; ++c) line = s.contains(sp.axpy(pts[i], c, dir));
            if (!line) continue;
            for (int c = 1; c < sp.q(); ++c) d.insert(sp.scale(c, dir));
        }
    }
    return d;
}

int omega_arrow(const PointSet& s) { return omega_linear(direction_set(s)); }

bool contains_linear_subspace(const PointSet& s, int t) {
    if (t <= 0) return true;
    if (t > s.dim()) return false;
    LinearSearch search(s, t);
    std::vector<Index> elems{0};
    return search.run(elems, 0, candidate_lines(s));
}

bool contains_linear_subspace_through(const PointSet& s, Index p, int t) {
    const auto& sp = s.space();
    if (p == 0) throw DomainError("the point must be nonzero");
    if (t <= 0) return true;
    if (t > s.dim() || !has_all_multiples(s, sp, p)) return false;
    std::vector<Index> elems{0};
    for (int c = 1; c < sp.q(); ++c) elems.push_back(sp.scale(c, p));
    std::vector<Index> cands;
    for (Index u : candidate_lines(s)) {
        if (u == sp.projective_rep(p)) continue;
        bool ok = true;
        for (std::size_t e = 1; e < elems.size() && ok; ++e)
            for (int c = 1; c < sp.q() && ok; ++c) ok = s.contains(sp.axpy(elems[e], c, u));
        if (ok) cands.push_back(u);
    }
    LinearSearch search(s, t);
    return search.run(elems, 1, cands);
}

bool is_projectively_determined(const PointSet& s) {
    if (s.contains(0)) return false;
    bool ok = true;
    s.for_each([&](Index v) { ok = ok && has_all_multiples(s, s.space(), v); });
    return ok;
}

std::vector<Index> projective_points(const VectorSpace& space) {
    std::vector<Index> out;
    for (Index v = 1; v < space.size(); ++v)
        if (space.projective_rep(v) == v) out.push_back(v);
    return out;
}

PointSet projectivize(const VectorSpace& space, std::span<const Index> lines) {
    PointSet s(space);
    for (Index v : lines) {
        if (v == 0) throw DomainError("projective points must be nonzero");
        for (int c = 1; c < space.q(); ++c) s.insert(space.scale(c, v));
    }
    return s;
}

std::vector<Index> projective_support(const PointSet& s) {
    std::vector<Index> out;
    s.for_each([&](Index v) {
        if (v != 0 && s.space().projective_rep(v) == v) out.push_back(v);
    });
    return out;
}

PointSet product(const PointSet& s, const PointSet& t) {
    if (s.q() != t.q()) throw DomainError("product needs a common field");
    PointSet out(s.q(), s.dim() + t.dim());
    const Index shift = s.universe();
    t.for_each([&](Index b) { s.for_each([&](Index a) { out.insert(a + b * shift); }); });
    return out;
}

}  // namespace afflab
