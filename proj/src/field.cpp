#include "afflab/field.hpp"

#include <limits>

namespace afflab {

bool is_prime(int q) {
    if (q < 2) return false;
    for (int d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

Field::Field(int q) : q_(q) {
    if (q < 2 || q > kMaxFieldOrder || !is_prime(q))
        throw DomainError("field order must be a prime in [2, 13], got " + std::to_string(q));
    for (int a = 1; a < q; ++a)
        for (int b = 1; b < q; ++b)
            if (a * b % q == 1) inv_[a] = b;
}

int Field::inv(int a) const {
    if (a % q_ == 0) throw DomainError("inverse of zero");
    return inv_[a % q_];
}

VectorSpace::VectorSpace(int q, int n) : field_(q), n_(n), size_(1) {
    if (n < 0) throw DomainError("negative dimension");
    for (int i = 0; i < n; ++i) {
        if (size_ > (std::numeric_limits<Index>::max() >> 1) / static_cast<Index>(q))
            throw DomainError("F_" + std::to_string(q) + "^" + std::to_string(n) +
                              " is too large to encode");
        size_ *= static_cast<Index>(q);
    }
}

Index VectorSpace::add(Index a, Index b) const noexcept {
    const Index q = static_cast<Index>(field_.order());
    if (q == 2) return a ^ b;
    Index r = 0, p = 1;
    while (a | b) {
        r += ((a % q + b % q) % q) * p;
        a /= q;
        b /= q;
        p *= q;
    }
    return r;
}

Index VectorSpace::neg(Index a) const noexcept {
    const Index q = static_cast<Index>(field_.order());
    if (q == 2) return a;
    Index r = 0, p = 1;
    while (a) {
        r += ((q - a % q) % q) * p;
        a /= q;
        p *= q;
    }
    return r;
}

Index VectorSpace::sub(Index a, Index b) const noexcept {
    if (field_.order() == 2) return a ^ b;
    return add(a, neg(b));
}

Index VectorSpace::scale(int c, Index a) const noexcept {
    const Index q = static_cast<Index>(field_.order());
    const Index cc = static_cast<Index>(((c % field_.order()) + field_.order()) % field_.order());
    if (cc == 0) return 0;
    if (cc == 1) return a;
    Index r = 0, p = 1;
    while (a) {
        r += (a % q * cc % q) * p;
        a /= q;
        p *= q;
    }
    return r;
}

Index VectorSpace::axpy(Index a, int c, Index b) const noexcept { return add(a, scale(c, b)); }

int VectorSpace::digit(Index x, int i) const noexcept {
    const Index q = static_cast<Index>(field_.order());
    for (int k = 0; k < i; ++k) x /= q;
    return static_cast<int>(x % q);
}

std::vector<int> VectorSpace::digits(Index x) const {
    std::vector<int> d(static_cast<std::size_t>(n_));
    const Index q = static_cast<Index>(field_.order());
    for (int i = 0; i < n_; ++i) {
        d[static_cast<std::size_t>(i)] = static_cast<int>(x % q);
        x /= q;
    }
    return d;
}

Index VectorSpace::encode(std::span<const int> d) const {
    if (static_cast<int>(d.size()) != n_)
        throw DomainError("expected " + std::to_string(n_) + " digits, got " + std::to_string(d.size()));
    Index r = 0;
    for (int i = n_ - 1; i >= 0; --i) {
        const int v = d[static_cast<std::size_t>(i)];
        if (v < 0 || v >= field_.order()) throw DomainError("digit out of range");
        r = r * static_cast<Index>(field_.order()) + static_cast<Index>(v);
    }
    return r;
}

int VectorSpace::weight(Index x) const noexcept {
    const Index q = static_cast<Index>(field_.order());
    int w = 0;
    for (; x; x /= q) w += (x % q) != 0;
    return w;
}

Index VectorSpace::projective_rep(Index x) const noexcept {
    Index best = x;
    for (int c = 2; c < field_.order(); ++c) best = std::min(best, scale(c, x));
    return best;
}

}  // namespace afflab
