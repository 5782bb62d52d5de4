#include "afflab/subspace.hpp"

#include "afflab/linalg.hpp"

namespace afflab {

std::vector<Index> Subspace::elements() const {
    const VectorSpace space(q, n);
    std::vector<Index> out{offset};
    for (Index b : basis) {
        const std::size_t m = out.size();
        for (int c = 1; c < q; ++c)
            for (std::size_t i = 0; i < m; ++i) out.push_back(space.axpy(out[i], c, b));
    }
    return out;
}

PointSet Subspace::points() const {
    PointSet s(q, n);
    for (Index x : elements()) s.insert(x);
    return s;
}

BigInt gaussian_binomial(int q, int n, int t) {
    if (t < 0 || t > n) return 0;
    BigInt num = 1, den = 1;
    const BigInt Q = q;
    for (int i = 0; i < t; ++i) {
        num *= ipow(Q, static_cast<unsigned>(n - i)) - 1;
        den *= ipow(Q, static_cast<unsigned>(i + 1)) - 1;
    }
    return num / den;
}

SubspaceEnumerator::SubspaceEnumerator(int q, int n, int t, SubspaceKind kind)
    : space_(q, n), t_(t), kind_(kind) {
    if (t < 0) throw DomainError("subspace dimension must be nonnegative");
    if (t > n) done_ = true;
}

bool SubspaceEnumerator::load_pivots() {
    const int n = space_.dim();
    std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
    for (int p : pivots_) is_pivot[static_cast<std::size_t>(p)] = true;
    free_slots_.clear();
    non_pivots_.clear();
    for (int r = 0; r < t_; ++r)
        for (int c = pivots_[static_cast<std::size_t>(r)] + 1; c < n; ++c)
            if (!is_pivot[static_cast<std::size_t>(c)]) free_slots_.emplace_back(r, c);
    for (int c = 0; c < n; ++c)
        if (!is_pivot[static_cast<std::size_t>(c)]) non_pivots_.push_back(c);
    free_values_.assign(free_slots_.size(), 0);
    offset_values_.assign(kind_ == SubspaceKind::affine ? non_pivots_.size() : 0, 0);
    return true;
}

namespace {

// Next t-combination of [0, n) in lexicographic order.
bool next_combination(std::vector<int>& c, int n) {
    const int t = static_cast<int>(c.size());
    int i = t - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == n - t + i) --i;
    if (i < 0) return false;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < t; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    return true;
}

bool increment(std::vector<int>& digits, int q) {
    for (auto& d : digits) {
        if (++d < q) return true;
        d = 0;
    }
    return false;
}

}  // namespace

bool SubspaceEnumerator::next(Subspace& out) {
    if (done_) return false;
    if (pending_) {
        pending_ = false;
    } else if (!started_) {
        started_ = true;
        pivots_.resize(static_cast<std::size_t>(t_));
        for (int i = 0; i < t_; ++i) pivots_[static_cast<std::size_t>(i)] = i;
        load_pivots();
    } else if (!increment(offset_values_, space_.q()) && !increment(free_values_, space_.q())) {
        if (!next_combination(pivots_, space_.dim())) {
            done_ = true;
            return false;
        }
        load_pivots();
    }
    build(out);
    ++position_;
    return true;
}

void SubspaceEnumerator::build(Subspace& out) const {
    const int q = space_.q();
    const int n = space_.dim();
    out.q = q;
    out.n = n;
    std::vector<DigitVector> rows(static_cast<std::size_t>(t_), DigitVector(static_cast<std::size_t>(n), 0));
    for (int r = 0; r < t_; ++r) rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(pivots_[static_cast<std::size_t>(r)])] = 1;
    for (std::size_t i = 0; i < free_slots_.size(); ++i) {
        const auto [r, c] = free_slots_[i];
        rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = free_values_[i];
    }
    out.basis.clear();
    for (const auto& row : rows) out.basis.push_back(space_.encode(row));
    DigitVector off(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < offset_values_.size(); ++i)
        off[static_cast<std::size_t>(non_pivots_[i])] = offset_values_[i];
    out.offset = space_.encode(off);
}

BigInt SubspaceEnumerator::total() const {
    BigInt g = gaussian_binomial(space_.q(), space_.dim(), t_);
    if (kind_ == SubspaceKind::affine && t_ <= space_.dim())
        g *= ipow(BigInt(space_.q()), static_cast<unsigned>(space_.dim() - t_));
    return g;
}

void SubspaceEnumerator::seek(std::uint64_t position) {
    const int n = space_.dim();
    const int q = space_.q();
    started_ = true;
    done_ = false;
    if (t_ > n) {
        done_ = true;
        position_ = position;
        return;
    }
    pivots_.resize(static_cast<std::size_t>(t_));
    for (int i = 0; i < t_; ++i) pivots_[static_cast<std::size_t>(i)] = i;
    std::uint64_t rest = position;
    for (;;) {
        load_pivots();
        const std::size_t digits = free_values_.size() + offset_values_.size();
        const BigInt block = ipow(BigInt(q), static_cast<unsigned>(digits));
        if (BigInt(rest) < block) break;
        rest -= static_cast<std::uint64_t>(block);
        if (!next_combination(pivots_, n)) {
            done_ = true;
            position_ = position;
            return;
        }
    }
    // The element at `rest` within this pivot block; offsets are the low digits.
    for (auto& d : offset_values_) {
        d = static_cast<int>(rest % static_cast<std::uint64_t>(q));
        rest /= static_cast<std::uint64_t>(q);
    }
    for (auto& d : free_values_) {
        d = static_cast<int>(rest % static_cast<std::uint64_t>(q));
        rest /= static_cast<std::uint64_t>(q);
    }
    position_ = position;
    pending_ = true;
}

std::vector<Subspace> enumerate_subspaces(int q, int n, int t, SubspaceKind kind) {
    SubspaceEnumerator e(q, n, t, kind);
    std::vector<Subspace> out;
    Subspace s;
    while (e.next(s)) out.push_back(s);
    return out;
}

}  // namespace afflab
