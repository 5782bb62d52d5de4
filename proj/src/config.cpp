#include "afflab/config.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace afflab {

namespace {

DigitVector diff(const Field& f, const DigitVector& a, const DigitVector& b) {
    DigitVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = f.sub(a[i], b[i]);
    return out;
}

}  // namespace

AffineConfiguration::AffineConfiguration(int q, int m, std::vector<DigitVector> points)
    : space_(q, m), points_(std::move(points)) {
    if (!is_prime(q) || q > kMaxFieldOrder) throw DomainError("q must be a prime <= 13");
    if (m < 0 || m > kMaxConfigDim)
        throw DomainError("configuration dimension must be in [0, " + std::to_string(kMaxConfigDim) + "]");
    if (points_.empty()) throw DomainError("a configuration needs at least one point");
    if (points_.size() > static_cast<std::size_t>(kMaxConfigPoints))
        throw DomainError("configurations are limited to " + std::to_string(kMaxConfigPoints) + " points");
    std::set<Index> seen;
    for (const auto& p : points_) {
        if (static_cast<int>(p.size()) != m) throw DomainError("point has the wrong number of coordinates");
        const Index x = space_.encode(p);
        if (!seen.insert(x).second) throw DomainError("configuration points must be distinct");
        indices_.push_back(x);
    }
    const Field& f = space_.field();
    EchelonBasis eb(f, m);
    basis_idx_.push_back(0);
    std::vector<DigitVector> dirs;
    for (std::size_t i = 1; i < points_.size(); ++i) {
        DigitVector d = diff(f, points_[i], points_[0]);
        if (eb.insert(d)) {
            basis_idx_.push_back(i);
            dirs.push_back(std::move(d));
        }
    }
    for (const auto& p : points_) {
        auto c = solve_combination(f, dirs, diff(f, p, points_[0]));
        AFFLAB_ENSURE(c.has_value(), "point outside the affine span of the basis");
        coords_.push_back(std::move(*c));
    }
    rank_lin_ = rank(f, points_);
}

AffineConfiguration AffineConfiguration::from_indices(int q, int m, std::span<const Index> points) {
    const VectorSpace sp(q, m);
    std::vector<DigitVector> pts;
    for (Index x : points) {
        if (x >= sp.size()) throw DomainError("point index outside F_q^m");
        pts.push_back(sp.digits(x));
    }
    return AffineConfiguration(q, m, std::move(pts));
}

std::vector<DigitVector> AffineConfiguration::affine_basis() const {
    std::vector<DigitVector> out;
    for (std::size_t i : basis_idx_) out.push_back(points_[i]);
    return out;
}

PointSet AffineConfiguration::as_point_set() const {
    PointSet s(space_);
    for (Index x : indices_) s.insert(x);
    return s;
}

AffineConfiguration AffineConfiguration::permuted(std::span<const std::size_t> order) const {
    if (order.size() != points_.size()) throw DomainError("permutation has the wrong length");
    std::vector<DigitVector> pts;
    std::vector<bool> used(points_.size(), false);
    for (std::size_t i : order) {
        if (i >= points_.size() || used[i]) throw DomainError("not a permutation");
        used[i] = true;
        pts.push_back(points_[i]);
    }
    return AffineConfiguration(q(), dim(), std::move(pts));
}

AffineConfiguration AffineConfiguration::translated(const DigitVector& shift) const {
    if (static_cast<int>(shift.size()) != dim()) throw DomainError("shift has the wrong length");
    std::vector<DigitVector> pts = points_;
    for (auto& p : pts)
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = space_.field().add(p[i], shift[i]);
    return AffineConfiguration(q(), dim(), std::move(pts));
}

AffineConfiguration make_cube(int q, int t) {
    const VectorSpace sp(q, t);
    if (sp.size() > static_cast<Index>(kMaxConfigPoints))
        throw DomainError("F_q^t has more than " + std::to_string(kMaxConfigPoints) + " points");
    std::vector<Index> idx(sp.size());
    for (Index i = 0; i < sp.size(); ++i) idx[i] = i;
    return AffineConfiguration::from_indices(q, t, idx);
}

AffineConfiguration make_circuit(int k) {
    if (k < 2) throw DomainError("circuits need k >= 2");
    const int m = 2 * k - 2;
    std::vector<DigitVector> pts;
    pts.emplace_back(static_cast<std::size_t>(m), 0);
    for (int i = 0; i < m; ++i) {
        DigitVector e(static_cast<std::size_t>(m), 0);
        e[static_cast<std::size_t>(i)] = 1;
        pts.push_back(std::move(e));
    }
    pts.emplace_back(static_cast<std::size_t>(m), 1);
    return AffineConfiguration(2, m, std::move(pts));
}

AffineConfiguration make_named(const std::string& spec) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    try {
        if (parts.size() == 3 && parts[0] == "cube") return make_cube(std::stoi(parts[1]), std::stoi(parts[2]));
        if (parts.size() == 2 && parts[0] == "circuit") return make_circuit(std::stoi(parts[1]));
    } catch (const std::logic_error& e) {
        if (dynamic_cast<const DomainError*>(&e)) throw;
    }
    throw DomainError("unknown configuration '" + spec + "' (expected cube:q:t or circuit:k)");
}

AffineConfiguration product(const AffineConfiguration& left, const AffineConfiguration& right) {
    if (left.q() != right.q()) throw DomainError("product needs a common field");
    std::vector<DigitVector> pts;
    for (const auto& a : left.points())
        for (const auto& b : right.points()) {
            DigitVector p = a;
            p.insert(p.end(), b.begin(), b.end());
            pts.push_back(std::move(p));
        }
    return AffineConfiguration(left.q(), left.dim() + right.dim(), std::move(pts));
}

std::vector<Index> span_offsets(const AffineConfiguration& b, const VectorSpace& target,
                                std::span<const Index> u) {
    if (static_cast<int>(u.size()) + 1 != b.rank_affine())
        throw DomainError("need one direction per non-root basis point");
    std::vector<Index> out;
    out.reserve(b.size());
    for (const auto& c : b.coords()) {
        Index s = 0;
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i]) s = target.axpy(s, c[i], u[i]);
        out.push_back(s);
    }
    return out;
}

PointSet span_of(const AffineConfiguration& b, const VectorSpace& target, Index z,
                 std::span<const Index> u) {
    PointSet s(target);
    for (Index off : span_offsets(b, target, u)) s.insert(target.add(z, off));
    return s;
}

int recompute_rank_affine(const AffineConfiguration& b) {
    const Field& f = b.space().field();
    std::vector<DigitVector> d;
    for (const auto& p : b.points()) d.push_back(diff(f, p, b.points()[0]));
    return rank(f, std::move(d)) + 1;
}

Index AffineMap::apply(Index x) const {
    Index y = translation;
    for (int j = 0; j < source.dim(); ++j) {
        const int c = source.digit(x, j);
        if (c) y = target.axpy(y, c, columns[static_cast<std::size_t>(j)]);
    }
    return y;
}

AffineMap AffineMap::from_basis_images(const AffineConfiguration& b, const VectorSpace& target,
                                       Index z, std::span<const Index> u) {
    if (target.q() != b.q()) throw DomainError("maps need a common field");
    if (static_cast<int>(u.size()) + 1 != b.rank_affine())
        throw DomainError("need one direction per non-root basis point");
    const Field& f = b.space().field();
    const int m = b.dim();
    const auto basis = b.affine_basis();
    // Extend the basis differences to a basis of F_q^m; extra vectors map to 0.
    std::vector<DigitVector> cols;
    std::vector<Index> images;
    EchelonBasis eb(f, m);
    for (std::size_t i = 1; i < basis.size(); ++i) {
        cols.push_back(diff(f, basis[i], basis[0]));
        eb.insert(cols.back());
        images.push_back(u[i - 1]);
    }
    for (int j = 0; j < m && eb.rank() < m; ++j) {
        DigitVector e(static_cast<std::size_t>(m), 0);
        e[static_cast<std::size_t>(j)] = 1;
        if (eb.insert(e)) {
            cols.push_back(e);
            images.push_back(0);
        }
    }
    AffineMap map{b.space(), target, 0, {}};
    for (int j = 0; j < m; ++j) {
        DigitVector e(static_cast<std::size_t>(m), 0);
        e[static_cast<std::size_t>(j)] = 1;
        const auto coef = solve_combination(f, cols, e);
        AFFLAB_ENSURE(coef.has_value(), "completed basis does not span");
        Index img = 0;
        for (std::size_t i = 0; i < coef->size(); ++i)
            if ((*coef)[i]) img = target.axpy(img, (*coef)[i], images[i]);
        map.columns.push_back(img);
    }
    map.translation = 0;
    const Index x0 = map.apply(b.point_indices()[b.basis_indices()[0]]);
    map.translation = target.sub(z, x0);
    return map;
}

}  // namespace afflab
