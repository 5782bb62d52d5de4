#include "afflab/sidorenko.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "afflab/extremal.hpp"
#include "afflab/parallel.hpp"
#include "afflab/rng.hpp"
#include "afflab/subspace.hpp"

namespace afflab {

namespace {

constexpr std::uint64_t kExhaustiveSubsetLimit = std::uint64_t{1} << 16;
constexpr long double kTieTolerance = 1e-12L;

BigInt space_size(int q, int n) { return ipow(BigInt(q), static_cast<unsigned>(n)); }

// alpha^C N^r = |A|^C N^(r - C), exact for integer C.
Rational exact_term(std::size_t set_size, const BigInt& N, int r, long c) {
    const BigInt k = set_size;
    Rational t = ipow(k, static_cast<unsigned>(c));
    const long e = r - c;
    if (e >= 0)
        t *= ipow(N, static_cast<unsigned>(e));
    else
        t /= ipow(N, static_cast<unsigned>(-e));
    return t;
}

long double real_term(std::size_t set_size, long double N, int r, long double c) {
    if (set_size == 0) return 0;
    const long double alpha = static_cast<long double>(set_size) / N;
    return std::exp(c * std::log(alpha) + r * std::log(N));
}

// Orders candidate witnesses: larger key wins, ties go to the lexicographically smaller set.
bool better(long double key, const PointSet& set, long double best_key,
            const std::optional<PointSet>& best) {
    if (!best) return true;
    const long double tol = kTieTolerance * std::max<long double>(1, std::fabs(best_key));
    if (key > best_key + tol) return true;
    if (key < best_key - tol) return false;
    return set.lex_less(*best);
}

PointSet random_subset(CounterRng& rng, const VectorSpace& sp, double p) {
    PointSet s(sp);
    for (Index x = 0; x < sp.size(); ++x)
        if (rng.bernoulli(p)) s.insert(x);
    return s;
}

PointSet random_subset_of_size(CounterRng& rng, const VectorSpace& sp, std::size_t k) {
    // Partial Fisher-Yates over the point indices.
    std::vector<Index> pts(sp.size());
    for (Index x = 0; x < sp.size(); ++x) pts[x] = x;
    PointSet s(sp);
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t j = i + rng.below(pts.size() - i);
        std::swap(pts[i], pts[j]);
        s.insert(pts[i]);
    }
    return s;
}

// Every k-subset of [0, N) in lexicographic order, as index lists.
template <class Visit>
void for_each_combination(Index N, std::size_t k, Visit&& visit) {
    std::vector<Index> c(k);
    for (std::size_t i = 0; i < k; ++i) c[i] = i;
    if (k > N) return;
    for (;;) {
        visit(c);
        std::size_t i = k;
        while (i > 0 && c[i - 1] == N - k + i - 1) --i;
        if (i == 0) return;
        ++c[i - 1];
        for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
    }
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    BigInt r = 1;
    for (std::uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace

SidorenkoParams SidorenkoParams::from_environment() {
    SidorenkoParams p;
    if (const char* env = std::getenv("AFFLAB_SIGMA3"); env && *env) {
        p.sigma3 = parse_rational(env);
        if (p.sigma3 <= 1) throw DomainError("AFFLAB_SIGMA3 must exceed 1");
    }
    return p;
}

Rational SidorenkoParams::sigma(int q) const {
    if (q == 2) return 2;
    if (q == 3) return sigma3;
    throw DomainError("sigma_q is only defined for q = 2 and q = 3");
}

bool Margin::negative() const {
    if (exact) return *exact < 0;
    return value < -kMarginTolerance * scale;
}

bool Margin::operator<(const Margin& o) const {
    if (exact && o.exact) return *exact < *o.exact;
    return value < o.value;
}

Margin margin_from_count(const BigInt& hom, std::size_t set_size, int q, int n, int r,
                         const Exponent& c) {
    const BigInt N = space_size(q, n);
    Margin m;
    m.scale = to_long_double(ipow(N, static_cast<unsigned>(r)));
    if (set_size == 0 || BigInt(set_size) == N) {
        // The inequality is an identity at alpha = 0 and alpha = 1.
        m.value = 0;
        if (c.is_integer()) m.exact = Rational(0);
        return m;
    }
    if (c.is_integer() && c.value() >= 0) {
        const long ci = numerator(c.value()).convert_to<long>();
        m.exact = Rational(hom) - exact_term(set_size, N, r, ci);
        m.value = to_long_double(*m.exact);
        return m;
    }
    m.value = to_long_double(hom) - real_term(set_size, to_long_double(N), r, c.approx());
    return m;
}

Margin margin(const AffineConfiguration& b, const PointSet& a, const Exponent& c, const BigInt& budget) {
    HomCountOptions o;
    o.budget = budget;
    o.with_automorphisms = false;
    const auto rep = hom_count(b, a, o);
    return margin_from_count(rep.total, a.size(), a.q(), a.dim(), b.rank_affine(), c);
}

long double required_c_from_count(const BigInt& hom, std::size_t set_size, int q, int n, int r) {
    const BigInt N = space_size(q, n);
    if (set_size == 0 || BigInt(set_size) == N) return 0;
    const long double ln_n = std::log(to_long_double(N));
    const long double ln_alpha = std::log(static_cast<long double>(set_size)) - ln_n;
    const long double ln_ratio = std::log(to_long_double(hom)) - r * ln_n;
    return ln_ratio / ln_alpha;
}

long double required_c(const AffineConfiguration& b, const PointSet& a, const BigInt& budget) {
    HomCountOptions o;
    o.budget = budget;
    o.with_automorphisms = false;
    const auto rep = hom_count(b, a, o);
    return required_c_from_count(rep.total, a.size(), a.q(), a.dim(), b.rank_affine());
}

std::string to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::verified: return "verified";
        case VerdictStatus::counterexample: return "counterexample";
        case VerdictStatus::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

SidorenkoVerdict verify_exhaustive(const AffineConfiguration& b, const Exponent& c, int n,
                                   const SearchBudget& budget) {
    const VectorSpace sp(b.q(), n);
    if (sp.size() > 64) throw DomainError("exhaustive verification needs q^n <= 64");
    if (c.value() < 0) throw DomainError("the exponent must be nonnegative");
    const int r = b.rank_affine();
    const BigInt subsets = BigInt(1) << static_cast<unsigned>(sp.size());
    const BigInt work = subsets * ipow(BigInt(sp.size()), static_cast<unsigned>(r));
    if (work > budget.work || sp.size() > 40)
        throw BudgetExceeded("exhaustive verification needs " + subsets.str() + " subsets (" +
                                 work.str() + " membership tests)",
                             work);
    const HomCounter counter(b, n, budget.work);
    const int N = static_cast<int>(sp.size());
    const BigInt big_n = sp.size();

    // Per-size thresholds alpha^C N^r.
    std::vector<Rational> exact_terms;
    std::vector<long double> real_terms(static_cast<std::size_t>(N) + 1);
    const bool integer_c = c.is_integer();
    for (int k = 0; k <= N; ++k) {
        real_terms[static_cast<std::size_t>(k)] = real_term(static_cast<std::size_t>(k), N, r, c.approx());
        if (integer_c)
            exact_terms.push_back(exact_term(static_cast<std::size_t>(k), big_n,
                                             r, numerator(c.value()).convert_to<long>()));
    }

    struct Part {
        std::optional<PointSet> worst;
        Margin margin;
        long double max_required = 0;
    };
    const std::uint64_t total = std::uint64_t{1} << N;
    const std::uint64_t chunks = std::min<std::uint64_t>(total, 256);
    std::vector<Part> parts(chunks);
    parallel_chunks(chunks, [&](std::uint64_t ch) {
        Part part;
        const std::uint64_t lo = total * ch / chunks, hi = total * (ch + 1) / chunks;
        for (std::uint64_t i = lo; i < hi; ++i) {
            const std::uint64_t mask = i ^ (i >> 1);  // Gray-code order
            const auto k = static_cast<std::size_t>(std::popcount(mask));
            const HomTally t = counter.count_mask(mask);
            Margin m;
            m.scale = real_terms[static_cast<std::size_t>(N)];
            if (k == 0 || static_cast<int>(k) == N) {
                m.value = 0;
                if (integer_c) m.exact = Rational(0);
            } else if (integer_c) {
                m.exact = Rational(BigInt(t.total)) - exact_terms[k];
                m.value = to_long_double(*m.exact);
            } else {
                m.value = static_cast<long double>(t.total) - real_terms[k];
            }
            const PointSet set = PointSet::from_mask(b.q(), n, mask);
            part.max_required = std::max(part.max_required,
                                         required_c_from_count(t.total, k, b.q(), n, r));
            const bool take = !part.worst || m < part.margin ||
                              (!(part.margin < m) && set.lex_less(*part.worst));
            if (take) {
                part.worst = set;
                part.margin = m;
            }
        }
        parts[ch] = std::move(part);
    });

    SidorenkoVerdict v;
    v.n_checked = n;
    v.subsets_examined = subsets;
    long double max_required = 0;
    for (auto& p : parts) {
        max_required = std::max(max_required, p.max_required);
        if (!p.worst) continue;
        const bool take = !v.witness || p.margin < v.margin ||
                          (!(v.margin < p.margin) && p.worst->lex_less(*v.witness));
        if (take) {
            v.witness = p.worst;
            v.margin = p.margin;
        }
    }
    v.required_c = max_required;
    if (v.margin.negative()) {
        v.status = VerdictStatus::counterexample;
        // Re-verify the witness with a fresh count.
        const Margin again = afflab::margin(b, *v.witness, c, budget.work);
        AFFLAB_ENSURE(again.negative(), "counterexample does not re-verify");
    } else {
        v.status = VerdictStatus::verified;
        v.boundary = v.margin.value < 0;
        if (v.boundary) v.note = "worst margin is negative but within tolerance";
        v.witness.reset();
    }
    return v;
}

SidorenkoVerdict adversary_search(const AffineConfiguration& b, int n, const SearchBudget& budget) {
    const VectorSpace sp(b.q(), n);
    const int r = b.rank_affine();
    const BigInt per_eval = ipow(BigInt(sp.size()), static_cast<unsigned>(r));
    const HomCounter counter(b, n, budget.work);
    BigInt spent = 0;
    SidorenkoVerdict v;
    v.n_checked = n;
    long double best = -1;
    std::optional<PointSet> witness;
    auto consider = [&](const PointSet& a) {
        const HomTally t = counter.count(a);
        spent += per_eval;
        v.subsets_examined += 1;
        const long double rc = required_c_from_count(t.total, a.size(), sp.q(), n, r);
        if (better(rc, a, best, witness)) {
            best = rc;
            witness = a;
        }
        return rc;
    };

    const BigInt subsets = BigInt(1) << static_cast<unsigned>(std::min<Index>(sp.size(), 63));
    const bool exhaustive = sp.size() <= 16 && subsets * per_eval <= budget.work;
    if (exhaustive) {
        const std::uint64_t total = std::uint64_t{1} << sp.size();
        for (std::uint64_t m = 0; m < total; ++m) consider(PointSet::from_mask(sp.q(), n, m));
        v.note = "exhaustive over all subsets";
    } else {
        // Flats, their complements and unions of two parallel flats.
        for (int t = 0; t < n && spent < budget.work; ++t) {
            SubspaceEnumerator e(sp.q(), n, t, SubspaceKind::affine);
            Subspace s;
            int taken = 0;
            while (e.next(s) && taken < 64 && spent < budget.work) {
                const PointSet flat = s.points();
                consider(flat);
                consider(flat.complement());
                if (s.offset == 0 && !s.basis.empty()) {
                    // Two cosets of the same linear subspace.
                    PointSet two = flat;
                    two |= flat.translated(sp.size() - 1);
                    consider(two);
                }
                ++taken;
            }
        }
        // Sets free of affine lines.
        if (sp.q() == 3 && n <= 3) {
            ExtremalQuery q;
            q.q = 3;
            q.n = n;
            q.family = {make_cube(3, 1)};
            q.node_budget = 2000000;
            const auto rep = ex_aff(q);
            if (rep.witness) consider(*rep.witness);
        }
        // Random-restart local search with single-point flips.
        CounterRng rng(budget.seed, 0xad7e);
        const int restarts = 8;
        for (int rs = 0; rs < restarts && spent < budget.work; ++rs) {
            PointSet cur = random_subset(rng, sp, 0.1 + 0.8 * rng.uniform());
            if (cur.empty()) cur.insert(rng.below(sp.size()));
            long double cur_val = consider(cur);
            bool improved = true;
            while (improved && spent < budget.work && v.subsets_examined < 200000) {
                improved = false;
                for (Index x = 0; x < sp.size() && spent < budget.work; ++x) {
                    PointSet next = cur;
                    if (next.contains(x))
                        next.erase(x);
                    else
                        next.insert(x);
                    if (next.empty() || next.size() == sp.size()) continue;
                    const long double val = consider(next);
                    if (val > cur_val + kTieTolerance) {
                        cur = std::move(next);
                        cur_val = val;
                        improved = true;
                    }
                }
            }
        }
        v.note = "portfolio of flats, line-free sets and local search";
    }
    v.status = VerdictStatus::inconclusive;
    v.required_c = best;
    v.witness = witness;
    return v;
}

SupersaturationReport supersaturation_check(const AffineConfiguration& b, const Exponent& c, int n,
                                            long double d, std::uint64_t samples,
                                            const SearchBudget& budget) {
    const VectorSpace sp(b.q(), n);
    const int r = b.rank_affine();
    const long double cl = c.approx();
    const long double gap = cl - r + 1;
    if (gap <= 0) throw DomainError("supersaturation needs C > rank_aff(B) - 1");
    if (d <= 0) throw DomainError("D must be positive");
    const long double N = static_cast<long double>(sp.size());
    const long double base = std::pow(static_cast<long double>(sp.q()), (1 - 1 / gap) * n);
    SupersaturationReport rep;
    rep.set_size = static_cast<std::size_t>(std::ceil(d * base - 1e-12L));
    if (rep.set_size == 0) rep.set_size = 1;
    if (rep.set_size > sp.size()) throw DomainError("D q^((1 - 1/(C-r+1))n) exceeds q^n");
    // Rounding up raises the effective D; the bound is evaluated at that value.
    const long double d_eff = static_cast<long double>(rep.set_size) / base;
    const long double alpha = static_cast<long double>(rep.set_size) / N;
    const long double prefactor = 1 - std::pow(static_cast<long double>(sp.q()), r - 1) / std::pow(d_eff, gap);
    const long double aut = to_long_double(aut_order(b));
    const long double bound = prefactor * std::exp(cl * std::log(alpha) + r * std::log(N)) / aut;
    rep.implies_copy = prefactor > 0;

    if (sp.size() <= 64 && std::pow(2.0L, N) * std::pow(N, static_cast<long double>(r)) <=
                               to_long_double(budget.work)) {
        try {
            rep.conditional = verify_exhaustive(b, c, n, budget).status != VerdictStatus::verified;
        } catch (const BudgetExceeded&) {
            rep.conditional = true;
        }
    }

    const HomCounter counter(b, n, budget.work);
    const BigInt autb = aut_order(b);
    bool first = true;
    auto test = [&](const PointSet& a) {
        const HomTally t = counter.count(a);
        const BigInt nondeg = BigInt(t.total) - t.degenerate;
        AFFLAB_ENSURE(nondeg % autb == 0, "non-degenerate count not divisible by |Aut(B)|");
        const long double copies = to_long_double(BigInt(nondeg / autb));
        const long double slack = copies - bound;
        rep.sets_tested += 1;
        if (!(copies > bound)) rep.all_exceed = false;
        if (rep.implies_copy && nondeg == 0) rep.copy_implication_ok = false;
        if (first || slack < rep.min_slack || (slack == rep.min_slack && a.lex_less(*rep.worst))) {
            rep.min_slack = slack;
            rep.worst = a;
            first = false;
        }
    };
    const BigInt combos = binomial(sp.size(), rep.set_size);
    if (combos <= samples || combos <= kExhaustiveSubsetLimit) {
        rep.exhaustive = true;
        for_each_combination(sp.size(), rep.set_size, [&](const std::vector<Index>& pts) {
            test(PointSet::from_indices(sp.q(), n, pts));
        });
    } else {
        CounterRng rng(budget.seed, 0x5a75);
        for (std::uint64_t i = 0; i < samples; ++i) test(random_subset_of_size(rng, sp, rep.set_size));
    }
    return rep;
}

BigInt product_hom_by_decomposition(const AffineConfiguration& b1, const AffineConfiguration& b2,
                                    const PointSet& a, const BigInt& budget) {
    if (b1.q() != a.q() || b2.q() != a.q()) throw DomainError("configurations and host use different fields");
    const VectorSpace& sp = a.space();
    const int f2 = b2.rank_affine() - 1;
    const BigInt outer = ipow(BigInt(sp.size()), static_cast<unsigned>(f2));
    const BigInt work = outer * ipow(BigInt(sp.size()), static_cast<unsigned>(b1.rank_affine()));
    if (work > budget) throw BudgetExceeded("decomposed product count exceeds the budget", work);
    const HomCounter inner(b1, a.dim(), budget);
    std::vector<Index> v(static_cast<std::size_t>(f2), 0);
    BigInt sum = 0;
    for (;;) {
        // A_v = { z : z + span_B2(v) inside A }.
        PointSet av = a;
        for (Index s : span_offsets(b2, sp, v)) av &= a.translated(sp.neg(s));
        sum += inner.count(av).total;
        int i = 0;
        while (i < f2 && ++v[static_cast<std::size_t>(i)] == sp.size()) v[static_cast<std::size_t>(i++)] = 0;
        if (i == f2) break;
    }
    return sum;
}

ProductCheckReport product_sidorenko_check(const AffineConfiguration& b1, const Exponent& c1,
                                           const AffineConfiguration& b2, const Exponent& c2, int n,
                                           std::uint64_t samples, std::uint64_t seed,
                                           const SearchBudget& budget) {
    if (b1.q() != b2.q()) throw DomainError("product needs a common field");
    ProductCheckReport rep;
    rep.product_exponent = Exponent(c1.value() * c2.value());
    const int q = b1.q();
    // The factors' constants must be established at every dimension up to n.
    rep.preconditions_met = true;
    if (c1.value() < b1.rank_affine() - 1 || c2.value() < b2.rank_affine() - 1) {
        rep.preconditions_met = false;
        rep.precondition_note = "an exponent is below rank_aff - 1";
    }
    for (int m = 1; m <= n && rep.preconditions_met; ++m) {
        for (const auto* pair : {&b1, &b2}) {
            const Exponent& c = pair == &b1 ? c1 : c2;
            try {
                if (verify_exhaustive(*pair, c, m, budget).status != VerdictStatus::verified) {
                    rep.preconditions_met = false;
                    rep.precondition_note = "a factor fails its exponent at n = " + std::to_string(m);
                }
            } catch (const std::exception&) {
                rep.preconditions_met = false;
                rep.precondition_note = "factor verification out of reach at n = " + std::to_string(m);
            }
            if (!rep.preconditions_met) break;
        }
    }

    const AffineConfiguration prod = product(b1, b2);
    const VectorSpace sp(q, n);
    const int r = prod.rank_affine();
    const HomCounter counter(prod, n, budget.work);
    bool first = true;
    int decompositions = 0;
    auto test = [&](const PointSet& a) {
        const HomTally t = counter.count(a);
        const Margin m = margin_from_count(t.total, a.size(), q, n, r, rep.product_exponent);
        rep.sets_tested += 1;
        if (rep.preconditions_met && m.negative()) rep.violated = true;
        if (first || m < rep.worst || (!(rep.worst < m) && a.lex_less(*rep.worst_set))) {
            rep.worst = m;
            rep.worst_set = a;
            first = false;
        }
        if (decompositions < 16) {
            ++decompositions;
            try {
                if (product_hom_by_decomposition(b1, b2, a, budget.work) != t.total) rep.decomposition_ok = false;
            } catch (const BudgetExceeded&) {
            }
        }
    };
    const BigInt per = ipow(BigInt(sp.size()), static_cast<unsigned>(r));
    if (sp.size() <= 16 && (BigInt(1) << static_cast<unsigned>(sp.size())) * per <= budget.work) {
        rep.exhaustive = true;
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << sp.size()); ++m) test(PointSet::from_mask(q, n, m));
    } else {
        CounterRng rng(seed, 0x9d0c);
        for (int t = 1; t < n; ++t) {
            SubspaceEnumerator e(q, n, t, SubspaceKind::affine);
            Subspace s;
            for (int i = 0; i < 8 && e.next(s); ++i) {
                test(s.points());
                test(s.points().complement());
            }
        }
        for (std::uint64_t i = 0; i < samples; ++i) test(random_subset(rng, sp, 0.05 + 0.9 * rng.uniform()));
    }
    return rep;
}

}  // namespace afflab
