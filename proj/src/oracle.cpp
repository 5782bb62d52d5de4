#include "afflab/oracle.hpp"

#include <set>

#include "afflab/subspace.hpp"

namespace afflab::oracle {

namespace {

constexpr Index kOracleLimit = Index{1} << 24;

// Affine span of pts by explicit closure; returns its elements.
std::set<Index> affine_span(const VectorSpace& sp, const std::vector<Index>& pts) {
    std::set<Index> span;
    if (pts.empty()) return span;
    span.insert(pts[0]);
    for (Index p : pts) {
        if (span.count(p)) continue;
        const Index d = sp.sub(p, pts[0]);
        std::set<Index> grown;
        for (Index x : span)
            for (int c = 0; c < sp.q(); ++c) grown.insert(sp.axpy(x, c, d));
        span = std::move(grown);
    }
    return span;
}

int log_q(Index size, int q) {
    int k = 0;
    while (size > 1) {
        size /= static_cast<Index>(q);
        ++k;
    }
    return k;
}

struct Parametrization {
    std::vector<Index> basis;                 // greedy affine basis of B
    std::vector<std::vector<int>> lambdas;    // per point, found by trying all combinations
};

Parametrization parametrize(const AffineConfiguration& b) {
    const VectorSpace& sp = b.space();
    const auto& pts = b.point_indices();
    Parametrization par;
    for (Index p : pts) {
        std::vector<Index> trial = par.basis;
        trial.push_back(p);
        if (affine_span(sp, trial).size() > affine_span(sp, par.basis).size() || par.basis.empty())
            par.basis.push_back(p);
    }
    const int k = static_cast<int>(par.basis.size()) - 1;
    for (Index p : pts) {
        std::vector<int> lam(static_cast<std::size_t>(k), 0);
        bool found = false;
        for (;;) {
            Index x = par.basis[0];
            for (int i = 0; i < k; ++i)
                x = sp.axpy(x, lam[static_cast<std::size_t>(i)], sp.sub(par.basis[static_cast<std::size_t>(i + 1)], par.basis[0]));
            if (x == p) {
                found = true;
                break;
            }
            int i = 0;
            while (i < k && ++lam[static_cast<std::size_t>(i)] == sp.q()) lam[static_cast<std::size_t>(i++)] = 0;
            if (i == k) break;
        }
        if (!found) throw InvariantViolation("oracle could not express a point in the basis");
        par.lambdas.push_back(lam);
    }
    return par;
}

template <class Visit>
void for_each_basis_image(const AffineConfiguration& b, const PointSet& a, Visit&& visit) {
    if (b.q() != a.q()) throw DomainError("configuration and host set use different fields");
    const VectorSpace& sp = a.space();
    const Parametrization par = parametrize(b);
    const int r = static_cast<int>(par.basis.size());
    BigInt work = ipow(BigInt(sp.size()), static_cast<unsigned>(r));
    if (work > kOracleLimit) throw BudgetExceeded("oracle limited to N^r <= 2^24", work);
    const auto relations = affine_relations(b);
    std::vector<Index> img(static_cast<std::size_t>(r), 0);
    std::vector<Index> values(b.size());
    for (;;) {
        bool inside = true;
        for (std::size_t j = 0; j < b.size(); ++j) {
            Index x = img[0];
            for (int i = 1; i < r; ++i)
                x = sp.axpy(x, par.lambdas[j][static_cast<std::size_t>(i - 1)], sp.sub(img[static_cast<std::size_t>(i)], img[0]));
            values[j] = x;
            inside = inside && a.contains(x);
        }
        if (inside) {
            for (const auto& rel : relations) {
                Index s = 0;
                for (std::size_t j = 0; j < b.size(); ++j) s = sp.axpy(s, rel[j], values[j]);
                if (s != 0) throw InvariantViolation("oracle map breaks an affine relation");
            }
            visit(img);
        }
        int i = 0;
        while (i < r && ++img[static_cast<std::size_t>(i)] == sp.size()) img[static_cast<std::size_t>(i++)] = 0;
        if (i == r) break;
    }
}

}  // namespace

std::vector<DigitVector> affine_relations(const AffineConfiguration& b) {
    std::vector<DigitVector> cols;
    for (const auto& p : b.points()) {
        DigitVector c = p;
        c.push_back(1);
        cols.push_back(std::move(c));
    }
    return kernel(b.space().field(), cols);
}

BigInt hom_count(const AffineConfiguration& b, const PointSet& a) {
    BigInt n = 0;
    for_each_basis_image(b, a, [&](const std::vector<Index>&) { ++n; });
    return n;
}

BigInt nondegenerate_hom_count(const AffineConfiguration& b, const PointSet& a) {
    BigInt n = 0;
    const auto r = static_cast<int>(b.rank_affine());
    for_each_basis_image(b, a, [&](const std::vector<Index>& img) {
        if (log_q(affine_span(a.space(), img).size(), a.q()) == r - 1) ++n;
    });
    return n;
}

PointSet direction_set(const PointSet& s) {
    const VectorSpace& sp = s.space();
    PointSet d(sp);
    for (Index x = 0; x < sp.size(); ++x)
        for (Index dir = 0; dir < sp.size(); ++dir) {
            bool line = true;
            for (int c = 0; c < sp.q() && line; ++c) line = s.contains(sp.axpy(x, c, dir));
            if (line) d.insert(dir);
        }
    return d;
}

int omega(const PointSet& s, OmegaKind kind) {
    if (s.universe() > (Index{1} << 12)) throw DomainError("oracle omega limited to q^n <= 4096");
    if (kind == OmegaKind::arrow) return omega(direction_set(s), OmegaKind::linear);
    const int n = s.dim();
    const SubspaceKind sk = kind == OmegaKind::linear ? SubspaceKind::linear : SubspaceKind::affine;
    for (int t = n; t >= 0; --t) {
        for (const auto& sub : enumerate_subspaces(s.q(), n, t, sk)) {
            bool inside = true;
            for (Index x : sub.elements())
                if (!(s.contains(x) || (kind == OmegaKind::linear && x == 0))) {
                    inside = false;
                    break;
                }
            if (inside) return t;
        }
    }
    return -1;  // only the affine kind on the empty set gets here
}

bool is_free(const AffineConfiguration& b, const PointSet& a) {
    if (b.q() != a.q()) throw DomainError("configuration and host set use different fields");
    const VectorSpace& sp = a.space();
    const auto relations = affine_relations(b);
    const auto pts = a.indices();
    const std::size_t k = b.size();
    const std::size_t rank = affine_span(b.space(), b.point_indices()).size();
    if (pts.size() < k) return true;
    std::vector<Index> img;
    std::vector<bool> used(pts.size(), false);
    // Relations are checked once their whole support is assigned.
    std::vector<std::size_t> last(relations.size(), 0);
    for (std::size_t i = 0; i < relations.size(); ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (relations[i][j]) last[i] = j;
    bool found = false;
    auto rec = [&](auto&& self, std::size_t j) -> void {
        if (found) return;
        if (j == k) {
            // Same relations and same rank means an isomorphism onto the image.
            if (affine_span(sp, img).size() == rank) found = true;
            return;
        }
        for (std::size_t c = 0; c < pts.size() && !found; ++c) {
            if (used[c]) continue;
            used[c] = true;
            img.push_back(pts[c]);
            bool ok = true;
            for (std::size_t i = 0; i < relations.size() && ok; ++i) {
                if (last[i] != j) continue;
                Index s = 0;
                for (std::size_t t = 0; t <= j; ++t) s = sp.axpy(s, relations[i][t], img[t]);
                ok = s == 0;
            }
            if (ok) self(self, j + 1);
            img.pop_back();
            used[c] = false;
        }
    };
    rec(rec, 0);
    return !found;
}

}  // namespace afflab::oracle
