#include "afflab/acceptance.hpp"

#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>

#include "afflab/bounds.hpp"
#include "afflab/extremal.hpp"
#include "afflab/hom.hpp"
#include "afflab/oracle.hpp"
#include "afflab/ramsey.hpp"
#include "afflab/rng.hpp"
#include "afflab/sidorenko.hpp"
#include "afflab/space.hpp"

namespace afflab {

namespace {

// Collects failed expectations; the first few are kept for the detail line.
class Checker {
public:
    void expect(bool ok, const std::string& what) {
        ++checks_;
        if (ok) return;
        ++failures_;
        if (failures_ <= 3) notes_.push_back(what);
    }
    void note(const std::string& s) { info_.push_back(s); }
    bool ok() const { return failures_ == 0; }
    std::string detail() const {
        std::ostringstream out;
        if (failures_ == 0) {
            out << checks_ << " checks";
        } else {
            out << failures_ << "/" << checks_ << " checks failed";
            for (const auto& n : notes_) out << "; " << n;
        }
        for (const auto& s : info_) out << "; " << s;
        return out.str();
    }

private:
    long checks_ = 0, failures_ = 0;
    std::vector<std::string> notes_, info_;
};

std::string str(const PointSet& s) {
    std::string out = "{";
    s.for_each([&](Index x) { out += (out.size() > 1 ? "," : "") + std::to_string(x); });
    return out + "}";
}

AffineConfiguration random_config(CounterRng& rng, int q, int m, std::size_t max_points) {
    const VectorSpace sp(q, m);
    const std::size_t want = 1 + rng.below(std::min<std::uint64_t>(max_points, sp.size()));
    std::vector<Index> pts;
    while (pts.size() < want) {
        const Index x = rng.below(sp.size());
        if (std::find(pts.begin(), pts.end(), x) == pts.end()) pts.push_back(x);
    }
    return AffineConfiguration::from_indices(q, m, pts);
}

PointSet random_set(CounterRng& rng, int q, int n, double p) {
    PointSet s(q, n);
    for (Index x = 0; x < s.universe(); ++x)
        if (rng.bernoulli(p)) s.insert(x);
    return s;
}

void identity_law(Checker& c, std::uint64_t) {
    const auto line = make_cube(2, 1);
    long sets = 0;
    for (int n = 1; n <= 3; ++n) {
        const std::uint64_t count = std::uint64_t{1} << (std::uint64_t{1} << n);
        for (std::uint64_t mask = 0; mask < count; ++mask) {
            const PointSet a = PointSet::from_mask(2, n, mask);
            const BigInt size(a.size());
            c.expect(hom_count(line, a).total == size * size, "hom != |A|^2 at " + str(a));
            const Margin m = margin(line, a, 2);
            c.expect(m.exact && *m.exact == 0, "margin != 0 at " + str(a));
            ++sets;
        }
    }
    c.note(std::to_string(sets) + " sets");
}

void sidorenko_square(Checker& c, std::uint64_t) {
    const auto square = make_cube(2, 2);
    const auto three = verify_exhaustive(square, 4, 3);
    c.expect(three.status == VerdictStatus::verified, "n=3 not verified");
    c.expect(three.margin.exact.has_value() && !three.boundary, "n=3 margins not exact");
    const auto four = verify_exhaustive(square, 4, 4);
    c.expect(four.status == VerdictStatus::verified, "n=4 not verified");
    c.expect(four.margin.exact.has_value() && !four.boundary, "n=4 margins not exact");
    c.expect(four.subsets_examined == 65536, "n=4 examined " + four.subsets_examined.str());
    if (four.margin.exact) c.note("min margin n=4 " + to_string(*four.margin.exact));
}

void line_counterexample(Checker& c, std::uint64_t) {
    const auto v = verify_exhaustive(make_cube(3, 1), 2, 1);
    c.expect(v.status == VerdictStatus::counterexample, "no counterexample");
    c.expect(v.witness && *v.witness == PointSet::from_indices(3, 1, std::vector<Index>{0, 1}),
             "witness " + (v.witness ? str(*v.witness) : std::string("missing")));
    c.expect(v.margin.exact && *v.margin.exact == -2, "margin " + std::to_string(static_cast<double>(v.margin.value)));
}

void product_identities(Checker& c, std::uint64_t seed) {
    for (int q : {2, 3}) {
        CounterRng rng(seed, 40 + q);
        for (int i = 0; i < 200; ++i) {
            const int m1 = 1 + static_cast<int>(rng.below(4));
            const int m2 = 1 + static_cast<int>(rng.below(4));
            const auto a = random_config(rng, q, m1, 6);
            const auto b = random_config(rng, q, m2, 6);
            const auto p = product(a, b);
            const PointSet sa = a.as_point_set(), sb = b.as_point_set(), sp = p.as_point_set();
            const std::string at = " (q=" + std::to_string(q) + ", pair " + std::to_string(i) + ")";
            c.expect(sp == product(sa, sb), "point sets differ" + at);
            c.expect(direction_set(sp) == product(direction_set(sa), direction_set(sb)), "direction sets" + at);
            // omega adds when both contain 0.
            if (sa.contains(0) && sb.contains(0))
                c.expect(omega_linear(sp) == omega_linear(sa) + omega_linear(sb), "omega" + at);
            c.expect(omega_arrow(sp) == omega_arrow(sa) + omega_arrow(sb), "omega_arrow" + at);
            c.expect(omega_affine(sp).value_or(-1) == omega_affine(sa).value_or(-1) + omega_affine(sb).value_or(-1),
                     "omega_aff" + at);
            // Linear ranks add when both contain 0.
            if (sa.contains(0) && sb.contains(0))
                c.expect(p.rank_linear() == a.rank_linear() + b.rank_linear(), "rank_lin" + at);
            // Affine ranks add minus one, against a fresh elimination.
            c.expect(recompute_rank_affine(p) == recompute_rank_affine(a) + recompute_rank_affine(b) - 1, "rank_aff" + at);
        }
    }
}

void degenerate_bound(Checker& c, std::uint64_t seed) {
    CounterRng rng(seed, 31);
    for (int i = 0; i < 500; ++i) {
        const int q = i % 2 ? 3 : 2;
        const auto b = random_config(rng, q, 1 + static_cast<int>(rng.below(3)), 5);
        const int n = 1 + static_cast<int>(rng.below(q == 2 ? 4 : 3));
        PointSet a = random_set(rng, q, n, rng.uniform());
        if (a.empty()) a.insert(rng.below(a.universe()));
        const BigInt deg = degenerate_hom_count(b, a);
        // (q alpha N)^(r-1) = (q |A|)^(r-1), exactly.
        const BigInt bound = ipow(BigInt(q) * a.size(), static_cast<unsigned>(b.rank_affine() - 1));
        c.expect(deg < bound, "instance " + std::to_string(i) + ": " + deg.str() + " >= " + bound.str());
    }
}

void cap_sets(Checker& c, std::uint64_t) {
    const std::vector<AffineConfiguration> line{make_cube(3, 1)};
    const Rational sigma(13901, 1000);
    const long expected[] = {2, 4, 9};
    for (int n = 1; n <= 3; ++n) {
        ExtremalQuery q;
        q.q = 3;
        q.n = n;
        q.family = line;
        const auto r = ex_aff(q);
        const std::string at = " at n=" + std::to_string(n);
        c.expect(r.status == SearchStatus::complete && r.value == expected[n - 1],
                 "value" + at + " = " + (r.value ? std::to_string(*r.value) : std::string("none")));
        c.expect(r.witness && static_cast<long>(r.witness->size()) == expected[n - 1] &&
                     oracle::is_free(line[0], *r.witness),
                 "witness" + at);
        if (r.value) {
            const auto bounds = check_bound_formulas(3, 1, n, *r.value, sigma);
            c.expect(bounds.below_thm42, "not below the closed-form bound" + at);
            if (n == 3) c.note("n=3 bound " + std::to_string(static_cast<double>(bounds.thm42_rhs)));
        }
        if (n <= 2) c.expect(ex_aff_brute_force(line, 3, n) == expected[n - 1], "full enumeration" + at);
    }
    ExtremalQuery ten;
    ten.q = 3;
    ten.n = 3;
    ten.family = line;
    ten.mode = ExtremalQuery::Mode::decision;
    ten.target = 10;
    const auto r = ex_aff(ten);
    c.expect(r.status == SearchStatus::complete && !r.value, "size 10 not refuted");
}

void bose_burton_cases(Checker& c, std::uint64_t) {
    for (const auto& [q, n, t] : std::vector<std::tuple<int, int, int>>{{2, 3, 2}, {2, 4, 2}, {3, 2, 2}}) {
        const auto r = bose_burton(q, n, t);
        const long formula = (static_cast<long>(std::pow(q, n)) - static_cast<long>(std::pow(q, n - t + 1))) / (q - 1);
        const std::string at = " at (" + std::to_string(q) + "," + std::to_string(n) + "," + std::to_string(t) + ")";
        c.expect(r.max_size == formula, "max" + at + " = " + std::to_string(r.max_size));
        c.expect(r.formula_ok, "formula" + at);
        c.expect(r.uniqueness_ok, "maximizers are not exactly the subspace complements" + at);
        for (const auto& w : r.witnesses)
            c.expect(oracle::omega(w, oracle::OmegaKind::linear) < t, "maximizer contains a subspace" + at);
    }
}

void ramsey_truths(Checker& c, std::uint64_t) {
    std::map<std::vector<int>, int> table;
    auto solve = [&](int q, std::vector<int> targets, int n_max) -> std::optional<RamseyReport> {
        RamseyQuery query;
        query.q = q;
        query.targets = targets;
        query.n_max = n_max;
        auto r = ramsey_search(query);
        if (r.search.status != SearchStatus::complete) return std::nullopt;
        if (q == 2) table[targets] = static_cast<int>(*r.search.value);
        return r;
    };
    for (int q : {2, 3})
        for (int t = 1; t <= 3; ++t) {
            const auto r = solve(q, {1, t}, q == 2 ? 5 : 3);
            c.expect(r && *r->search.value == t,
                     "R_" + std::to_string(q) + "(1," + std::to_string(t) + ") != " + std::to_string(t));
        }
    const auto r22 = solve(2, {2, 2}, 5);
    c.expect(r22.has_value(), "R_2(2,2) not complete");
    if (r22) {
        const int v = static_cast<int>(*r22->search.value);
        c.note("R_2(2,2) = " + std::to_string(v));
        const auto& w = r22->lower_witness;
        c.expect(w && w->n == v - 1 && w->is_partition(), "no lower witness at n = value - 1");
        if (w)
            for (const auto& cls : w->classes)
                c.expect(oracle::omega(cls, oracle::OmegaKind::linear) < 2, "lower witness class has a 2-subspace");
    }
    // Further tuples feed the recurrence check.
    for (const auto& t : std::vector<std::vector<int>>{{1, 2, 2}, {2, 1, 2}, {1, 1, 3}, {1, 1, 2}, {2, 3}, {1, 3}})
        solve(2, t, 5);
    const auto checks = check_recurrence(table);
    c.expect(!checks.empty(), "no recurrence instances");
    for (const auto& chk : checks) c.expect(chk.holds, "recurrence fails");
    c.note(std::to_string(checks.size()) + " recurrence instances");
}

void mq_link(Checker& c, std::uint64_t) {
    const auto m = mq_search(2, 2, 4);
    c.expect(m.search.status == SearchStatus::complete && m.search.value.has_value(), "m_2(2) not exact");
    bool saw_two = false;
    for (const auto& d : m.decisions)
        if (d.n == 2 && d.witness) {
            saw_two = true;
            c.expect(d.witness->size() == 2 &&
                         oracle::omega(oracle::direction_set(*d.witness), oracle::OmegaKind::linear) < 2,
                     "bad n=2 witness");
        }
    c.expect(saw_two, "no n=2 witness");
    RamseyQuery query;
    query.q = 2;
    query.targets = {2, 2};
    const auto r = ramsey_search(query);
    c.expect(r.search.status == SearchStatus::complete && m.search.value && *r.search.value <= *m.search.value,
             "R_2(2,2) > m_2(2)");
    if (m.search.value) c.note("m_2(2) = " + std::to_string(*m.search.value));
}

void circuit_facts(Checker& c, std::uint64_t) {
    const auto c6 = make_circuit(3);
    const PointSet pts = c6.as_point_set();
    c.expect(direction_set(pts) == PointSet::full(2, 4), "direction set is not F_2^4");
    PointSet sums(2, 4);
    const auto idx = c6.point_indices();
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = i + 1; j < idx.size(); ++j) sums.insert(idx[i] ^ idx[j]);
    sums.erase(0);
    c.expect(sums.size() == 15, std::to_string(sums.size()) + " distinct nonzero sums");
    c.expect(aut_order(c6) == 720, "aut_order " + aut_order(c6).str());
    c.expect(c6.rank_affine() == 5 && recompute_rank_affine(c6) == 5, "rank_affine");
}

void bound_evaluators(Checker& c, std::uint64_t) {
    auto exact_is = [&](BoundId id, BoundParams p, long v) {
        const auto x = eval_bound(id, p);
        c.expect(x.is_exact() && *x.exact_value() == v, to_string(id) + " = " + x.str());
    };
    exact_is(BoundId::nelson_nomoto, {{"t", "2"}}, 12);
    exact_is(BoundId::offdiag_f2, {{"t", "4"}}, 10);
    exact_is(BoundId::thm51_tower, {{"q", "2"}, {"s", "2"}, {"t", "2"}}, 65536);
    // floor(log^(s-1)) <= 2t, for the recursion and the level-counted tower.
    BoundOptions levels;
    levels.height = HeightConvention::levels;
    for (int s = 1; s <= 4; ++s)
        for (int t = 1; t <= 6; ++t) {
            BoundParams p{{"q", "2"}};
            p.set("s", s);
            p.set("t", t);
            const auto two_t = ExtendedNumber::exact(2 * t);
            const std::string at = " at s=" + std::to_string(s) + ", t=" + std::to_string(t);
            for (const auto& v : {eval_bound(BoundId::thm51_recursion, p), eval_bound(BoundId::thm51_tower, p, levels)}) {
                const Ordering o = compare(iterated_log(v, 2, s - 1), two_t);
                c.expect(o == Ordering::less || o == Ordering::equal, "iterated log exceeds 2t" + at);
            }
        }
    for (int t = 2; t <= 30; ++t) {
        BoundParams p;
        p.set("t", t);
        c.expect(compare(eval_bound(BoundId::offdiag_f2, p), eval_bound(BoundId::nelson_nomoto, p)) == Ordering::less,
                 "offdiag_f2 not below nelson_nomoto at t=" + std::to_string(t));
    }
}

void oracle_gate(Checker& c, std::uint64_t seed) {
    CounterRng rng(seed, 12);
    for (int i = 0; i < 1000; ++i) {
        const int q = i % 3 == 0 ? 3 : 2;
        const int n = 1 + static_cast<int>(rng.below(3));
        const auto b = random_config(rng, q, 1 + static_cast<int>(rng.below(3)), 5);
        const PointSet a = random_set(rng, q, n, 0.2 + 0.7 * rng.uniform());
        const auto rep = hom_count(b, a);
        c.expect(rep.total == oracle::hom_count(b, a), "hom_count instance " + std::to_string(i));
        c.expect(rep.nondegenerate == oracle::nondegenerate_hom_count(b, a), "nondegenerate instance " + std::to_string(i));
    }
    for (int i = 0; i < 1000; ++i) {
        const int q = i % 3 == 0 ? 3 : 2;
        const int n = 1 + static_cast<int>(rng.below(q == 2 ? 4 : 3));
        const PointSet s = random_set(rng, q, n, rng.uniform());
        const std::string at = " instance " + std::to_string(i);
        c.expect(omega_linear(s) == oracle::omega(s, oracle::OmegaKind::linear), "omega" + at);
        c.expect(omega_affine(s).value_or(-1) == oracle::omega(s, oracle::OmegaKind::affine), "omega_aff" + at);
        c.expect(omega_arrow(s) == oracle::omega(s, oracle::OmegaKind::arrow), "omega_arrow" + at);
    }
    for (int i = 0; i < 1000; ++i) {
        const int q = i % 3 == 0 ? 3 : 2;
        const int n = 1 + static_cast<int>(rng.below(q == 2 ? 4 : 3));
        const auto b = random_config(rng, q, 1 + static_cast<int>(rng.below(2)), 4);
        const PointSet a = random_set(rng, q, n, 0.3 + 0.6 * rng.uniform());
        c.expect(contains_copy(b, a) == !oracle::is_free(b, a), "freeness instance " + std::to_string(i));
    }
}

struct Criterion {
    int id;
    const char* title;
    double limit;
    void (*run)(Checker&, std::uint64_t);
};

const Criterion kCriteria[] = {
    {1, "identity law hom(F_2^1, A) = |A|^2", 5, identity_law},
    {2, "F_2^2 is 4-weakly Sidorenko for n <= 4", 600, sidorenko_square},
    {3, "F_3^1 fails at C = 2", 1, line_counterexample},
    {4, "product identities for omega and ranks", 120, product_identities},
    {5, "degenerate homomorphism bound", 300, degenerate_bound},
    {6, "cap-set extremal values", 1800, cap_sets},
    {7, "Bose-Burton maxima and uniqueness", 600, bose_burton_cases},
    {8, "Ramsey ground truths", 3600, ramsey_truths},
    {9, "m_q linkage", 600, mq_link},
    {10, "C_6 facts", 1, circuit_facts},
    {11, "bound evaluators", 1, bound_evaluators},
    {12, "oracle gate", 900, oracle_gate},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const std::function<void(const CriterionResult&)>& on_result) {
    std::vector<CriterionResult> out;
    for (const auto& crit : kCriteria) {
        if (!options.only.empty() && !options.only.count(crit.id)) continue;
        CriterionResult r;
        r.id = crit.id;
        r.title = crit.title;
        r.limit_seconds = crit.limit;
        Checker checker;
        const auto start = std::chrono::steady_clock::now();
        try {
            crit.run(checker, options.seed);
            r.detail = checker.detail();
            r.passed = checker.ok();
        } catch (const std::exception& e) {
            r.detail = std::string("threw: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (r.seconds >= r.limit_seconds) {
            r.passed = false;
            r.detail += "; over the time limit";
        }
        if (on_result) on_result(r);
        out.push_back(std::move(r));
    }
    return out;
}

std::string format_result_line(const CriterionResult& r) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2fs < %.0fs", r.seconds, r.limit_seconds);
    return "criterion " + std::to_string(r.id) + (r.id < 10 ? "  " : " ") + (r.passed ? "PASS" : "FAIL") + "  " +
           r.title + "  [" + buf + "]  " + r.detail;
}

}  // namespace afflab
