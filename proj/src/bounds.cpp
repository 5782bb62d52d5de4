#include "afflab/bounds.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace afflab {

namespace {

constexpr long double kInf = std::numeric_limits<long double>::infinity();
// Largest exponent for which exp2 stays finite, with headroom.
constexpr long double kExpLimit = 16000.0L;
// Relative error allowance for one transcendental step.
constexpr long double kRel = 1e-17L;

long double down(long double x, long double rel = kRel) {
    if (std::isinf(x)) return x;
    return x - std::fabs(x) * rel - std::numeric_limits<long double>::denorm_min();
}
long double up(long double x, long double rel = kRel) {
    if (std::isinf(x)) return x;
    return x + std::fabs(x) * rel + std::numeric_limits<long double>::denorm_min();
}

long double exp2_down(long double x) {
    if (x == -kInf) return 0;
    return std::max<long double>(0, down(std::exp2(x), (std::fabs(x) + 1) * kRel * 4));
}
long double exp2_up(long double x) {
    if (x == kInf) return kInf;
    return up(std::exp2(x), (std::fabs(x) + 1) * kRel * 4);
}
long double log2_down(long double x) {
    if (x <= 0) return -kInf;
    const long double r = std::log2(x);
    return r - (std::fabs(r) + 1) * kRel * 4;
}
long double log2_up(long double x) {
    if (x <= 0) return -kInf;
    const long double r = std::log2(x);
    return r + (std::fabs(r) + 1) * kRel * 4;
}

struct Interval {
    long double lo, hi;
};

// log2 of a positive rational, enclosed.
Interval log2_rational(const Rational& r) {
    if (r <= 0) throw DomainError("log of a nonpositive value");
    const long double v = log2_big(numerator(r)) - log2_big(denominator(r));
    const long double slack = (std::fabs(v) + 1) * 1e-14L;
    return {v - slack, v + slack};
}

Rational rpow(const Rational& b, unsigned e) {
    return Rational(ipow(numerator(b), e), ipow(denominator(b), e));
}

bool is_integer(const Rational& r) { return denominator(r) == 1; }

LogForm enclose_big(const BigInt& v) {
    if (v <= 0) return LogForm{0, to_long_double(v), to_long_double(v)};
    if (boost::multiprecision::msb(v) < 63) return LogForm::point(static_cast<long double>(v.convert_to<std::uint64_t>()));
    const long double l = log2_big(v);
    return LogForm{1, l - (l + 1) * 1e-15L, l + (l + 1) * 1e-15L}.normalized();
}

// Shifts log2(x) by an amount in [dlo, dhi], i.e. multiplies x by 2^d.
LogForm shift_log(LogForm f, long double dlo, long double dhi) {
    if (f.level == 0) {
        f.lo = f.lo >= 0 ? f.lo * exp2_down(dlo) : f.lo * exp2_up(dhi);
        f.hi = f.hi >= 0 ? f.hi * exp2_up(dhi) : f.hi * exp2_down(dlo);
        return f;
    }
    if (f.level == 1) {
        f.lo = down(f.lo + dlo);
        f.hi = up(f.hi + dhi);
        return f;
    }
    // Deeper levels: log2^(level-1)(x) >= 2^64, so a shift d at level one
    // moves level two by at most |d| / (2^64 ln 2) and deeper levels by less.
    if (f.lo < 64) {
        f.hi = kInf;
        if (dlo < 0) f.lo = -kInf;
        return f;
    }
    constexpr long double kDamp = 0x1.0p-63L;
    if (dlo < 0) f.lo = down(f.lo + dlo * kDamp);
    if (dhi > 0) f.hi = up(f.hi + dhi * kDamp);
    return f;
}

// Brings f to the given (higher) level.
LogForm lift(LogForm f, int level) {
    while (f.level < level) {
        f.lo = log2_down(f.lo);
        f.hi = log2_up(f.hi);
        ++f.level;
    }
    return f;
}

Ordering compare_forms(const LogForm& a, const LogForm& b) {
    const int level = std::max(a.level, b.level);
    const LogForm x = lift(a, level);
    const LogForm y = lift(b, level);
    if (x.hi < y.lo) return Ordering::less;
    if (y.hi < x.lo) return Ordering::greater;
    if (x.lo == x.hi && y.lo == y.hi && x.lo == y.lo && level == 0) return Ordering::equal;
    return Ordering::indistinguishable;
}

// Enclosure of any value other than -inf, positive or not.
LogForm enclosure(const ExtendedNumber& x) {
    return std::visit(
        [](const auto& v) -> LogForm {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BigInt>) {
                return enclose_big(v);
            } else if constexpr (std::is_same_v<T, Tower>) {
                LogForm f = enclose_big(v.top);
                for (auto it = v.bases.rbegin(); it != v.bases.rend(); ++it) {
                    const Interval lb = log2_rational(*it);
                    f = LogForm::power(lb.lo, lb.hi, f);
                }
                return f;
            } else if constexpr (std::is_same_v<T, RealValue>) {
                return LogForm{0, down(v.value - v.tolerance), up(v.value + v.tolerance)};
            } else if constexpr (std::is_same_v<T, LogForm>) {
                return v;
            } else {
                return LogForm{0, -kInf, -kInf};
            }
        },
        x.form());
}

ExtendedNumber from_log2(long double l2, long double slack) {
    return ExtendedNumber::bounded(LogForm{1, l2 - slack, l2 + slack});
}

// q^e for a rational exponent e.
ExtendedNumber power_of(int q, const Rational& e, std::size_t bits_cap) {
    if (is_integer(e) && e >= 0) {
        const BigInt& k = numerator(e);
        const long double bits = to_long_double(k) * std::log2(static_cast<long double>(q));
        if (bits <= static_cast<long double>(bits_cap))
            return ExtendedNumber::exact(ipow(BigInt(q), k.convert_to<unsigned>()));
    }
    const long double l2 = to_long_double(e) * std::log2(static_cast<long double>(q));
    return from_log2(l2, (std::fabs(l2) + 1) * 1e-15L);
}

ExtendedNumber from_rational(const Rational& r, std::size_t bits_cap) {
    if (is_integer(r)) {
        const BigInt& v = numerator(r);
        if (v <= 0 || boost::multiprecision::msb(v) < bits_cap) return ExtendedNumber::exact(v);
        return ExtendedNumber::bounded(enclose_big(v));
    }
    const long double v = to_long_double(r);
    if (std::isinf(v)) {
        const Interval l = log2_rational(r);
        return ExtendedNumber::bounded(LogForm{1, l.lo, l.hi});
    }
    return ExtendedNumber::real(v, std::fabs(v) * 1e-18L);
}

// (t - 1)(C^k - a) + a with a = (r - 1)k; shared by the off-diagonal bounds.
ExtendedNumber product_bound(long t, const Rational& c, long k, long a, std::size_t bits_cap) {
    const Interval lc = log2_rational(c);
    if (static_cast<long double>(k) * lc.hi <= static_cast<long double>(bits_cap)) {
        const Rational v = Rational(t - 1) * (rpow(c, static_cast<unsigned>(k)) - a) + a;
        return from_rational(v, bits_cap);
    }
    // C^k dominates: log2 of the value is log2(t - 1) + k log2 C up to a
    // relative perturbation far below the enclosure width.
    const long double base = std::log2(static_cast<long double>(t - 1));
    return ExtendedNumber::bounded(LogForm{1, down(base + k * lc.lo, 1e-15L), up(base + k * lc.hi, 1e-15L)});
}

long require_at_least(const BoundParams& p, const std::string& name, long min) {
    const long v = p.get_int(name);
    if (v < min) throw DomainError("parameter " + name + " must be at least " + std::to_string(min));
    return v;
}

Rational sigma_of(const BoundParams& p, const BoundOptions& opt) {
    const long q = p.get_int("q");
    if (q != 2 && q != 3) throw DomainError("parameter q must be 2 or 3");
    return opt.sidorenko.sigma(static_cast<int>(q));
}

int tower_sigmas(long height, HeightConvention c) {
    return static_cast<int>(c == HeightConvention::sigma_count ? height : height - 1);
}

// t * sigma^x for an ExtendedNumber x.
ExtendedNumber times_power(long t, const Rational& sigma, const ExtendedNumber& x, std::size_t bits_cap) {
    if (is_integer(sigma) && x.is_exact()) {
        const BigInt& e = *x.exact_value();
        const long double bits = to_long_double(e) * log2_rational(sigma).hi + std::log2(static_cast<long double>(t));
        if (e >= 0 && bits <= static_cast<long double>(bits_cap))
            return ExtendedNumber::exact(BigInt(t) * ipow(numerator(sigma), e.convert_to<unsigned>()));
    }
    const Interval lb = log2_rational(sigma);
    const long double lt = std::log2(static_cast<long double>(t));
    LogForm f = LogForm::power(lb.lo, lb.hi, enclosure(x));
    f = shift_log(f, down(lt), up(lt)).normalized();
    return ExtendedNumber::bounded(f);
}

}  // namespace

LogForm LogForm::point(long double v) { return LogForm{0, v, v}; }

LogForm LogForm::normalized() const {
    LogForm f = *this;
    while (f.level >= 1 && f.hi < kExpLimit) {
        f.lo = exp2_down(f.lo);
        f.hi = exp2_up(f.hi);
        --f.level;
    }
    return f;
}

LogForm LogForm::power(long double lb_lo, long double lb_hi, const LogForm& x) {
    // log2^(L+1)(b^x) = log2^(L)(x log2 b)
    LogForm f;
    if (x.level == 0) {
        f = LogForm{1, x.lo >= 0 ? down(x.lo * lb_lo) : down(x.lo * lb_hi),
                    x.hi >= 0 ? up(x.hi * lb_hi) : up(x.hi * lb_lo)};
    } else {
        f = shift_log(x, log2_down(lb_lo), log2_up(lb_hi));
        ++f.level;
    }
    return f.normalized();
}

LogForm LogForm::times(long double c) const {
    if (c < 1) throw DomainError("LogForm::times needs c >= 1");
    return shift_log(*this, log2_down(c), log2_up(c)).normalized();
}

std::optional<LogForm> LogForm::log_base(long double lb_lo, long double lb_hi) const {
    if (level == 0) {
        if (lo <= 1) return std::nullopt;
        return LogForm{0, log2_down(lo) / lb_hi, log2_up(hi) / lb_lo};
    }
    // log_b x = log2(x) / log2(b), and log2(x) sits one level down.
    LogForm f{level - 1, lo, hi};
    if (f.level == 0) {
        f.lo = down(f.lo / lb_hi);
        f.hi = up(f.hi / lb_lo);
        return f;
    }
    return shift_log(f, -log2_up(lb_hi), -log2_down(lb_lo)).normalized();
}

ExtendedNumber ExtendedNumber::bounded(const LogForm& f) {
    const LogForm n = f.normalized();
    if (n.level == 0) {
        const long double mid = (n.lo + n.hi) / 2;
        return real(mid, std::max(mid - n.lo, n.hi - mid));
    }
    return ExtendedNumber(Form(n));
}

ExtendedNumber ExtendedNumber::tower(std::vector<Rational> bases, BigInt top, std::size_t bits_cap) {
    for (const auto& b : bases)
        if (b < 2) throw DomainError("tower bases must be at least 2");
    while (!bases.empty()) {
        const Rational& b = bases.back();
        if (!is_integer(b) || top < 0) break;
        const long double bits = to_long_double(top) * log2_rational(b).hi;
        if (bits > static_cast<long double>(bits_cap)) break;
        top = ipow(numerator(b), top.convert_to<unsigned>());
        bases.pop_back();
    }
    if (bases.empty()) return exact(std::move(top));
    return ExtendedNumber(Form(Tower{std::move(bases), std::move(top)}));
}

std::string ExtendedNumber::form_name() const {
    switch (form_.index()) {
        case 0: return "exact";
        case 1: return "tower";
        case 2: return "real";
        case 3: return "log_bounds";
        default: return "neg_infinity";
    }
}

std::optional<LogForm> ExtendedNumber::log_form() const {
    if (is_neg_infinity()) return std::nullopt;
    const LogForm f = enclosure(*this);
    if (f.level == 0 && f.hi <= 0) return std::nullopt;
    return f;
}

long double ExtendedNumber::approx() const {
    if (const BigInt* v = exact_value()) return to_long_double(*v);
    if (is_neg_infinity()) return -kInf;
    if (const RealValue* r = std::get_if<RealValue>(&form_)) return r->value;
    const LogForm f = enclosure(*this);
    if (f.level > 0) return kInf;
    return (f.lo + f.hi) / 2;
}

std::string ExtendedNumber::str() const {
    std::ostringstream out;
    out.precision(18);
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, BigInt>) {
                out << v.str();
            } else if constexpr (std::is_same_v<T, Tower>) {
                for (const auto& b : v.bases) {
                    const std::string base = to_string(b);
                    out << (base.find('/') == std::string::npos ? base : "(" + base + ")") << "^(";
                }
                out << v.top.str();
                for (std::size_t i = 0; i < v.bases.size(); ++i) out << ')';
            } else if constexpr (std::is_same_v<T, RealValue>) {
                out << v.value << " +- " << v.tolerance;
            } else if constexpr (std::is_same_v<T, LogForm>) {
                out << "log2^(" << v.level << ") in [" << v.lo << ", " << v.hi << "]";
            } else {
                out << "-inf";
            }
        },
        form_);
    return out.str();
}

std::string to_string(Ordering o) {
    switch (o) {
        case Ordering::less: return "less";
        case Ordering::equal: return "equal";
        case Ordering::greater: return "greater";
        case Ordering::indistinguishable: return "indistinguishable";
    }
    return "indistinguishable";
}

Ordering compare(const ExtendedNumber& a, const ExtendedNumber& b) {
    if (a.is_neg_infinity() || b.is_neg_infinity()) {
        if (a.is_neg_infinity() && b.is_neg_infinity()) return Ordering::equal;
        return a.is_neg_infinity() ? Ordering::less : Ordering::greater;
    }
    if (a.is_exact() && b.is_exact()) {
        const BigInt& x = *a.exact_value();
        const BigInt& y = *b.exact_value();
        return x < y ? Ordering::less : (x > y ? Ordering::greater : Ordering::equal);
    }
    const auto* ta = std::get_if<Tower>(&a.form());
    const auto* tb = std::get_if<Tower>(&b.form());
    if (ta && tb && ta->bases == tb->bases) {
        return ta->top < tb->top ? Ordering::less : (ta->top > tb->top ? Ordering::greater : Ordering::equal);
    }
    return compare_forms(enclosure(a), enclosure(b));
}

ExtendedNumber iterated_log(const ExtendedNumber& x, const Rational& base, int k) {
    if (base <= 1) throw DomainError("iterated_log needs base > 1");
    if (k < 0) throw DomainError("iterated_log needs k >= 0");
    const Interval lb = log2_rational(base);
    ExtendedNumber cur = x;
    for (int i = 0; i < k; ++i) {
        if (cur.is_neg_infinity()) return cur;
        if (const BigInt* v = cur.exact_value()) {
            if (*v <= 0) return ExtendedNumber::neg_infinity();
            if (is_integer(base)) {
                // Exact when v is a power of the base.
                const BigInt& b = numerator(base);
                if (b == 2) {
                    const std::size_t low = boost::multiprecision::lsb(*v);
                    if (boost::multiprecision::msb(*v) == low) {
                        cur = ExtendedNumber::exact(BigInt(low));
                        continue;
                    }
                }
                BigInt rest = *v;
                long e = 0;
                while (rest % b == 0) {
                    rest /= b;
                    ++e;
                }
                if (rest == 1) {
                    cur = ExtendedNumber::exact(BigInt(e));
                    continue;
                }
            }
        }
        if (const Tower* t = std::get_if<Tower>(&cur.form()); t && t->bases.front() == base) {
            std::vector<Rational> rest(t->bases.begin() + 1, t->bases.end());
            cur = ExtendedNumber::tower(std::move(rest), t->top);
            continue;
        }
        const LogForm f = enclosure(cur);
        if (f.level == 0 && f.hi <= 0) return ExtendedNumber::neg_infinity();
        if (f.level == 0 && f.lo <= 0) {
            // Sign undecided at this tolerance; follow the midpoint.
            if (f.lo + f.hi <= 0) return ExtendedNumber::neg_infinity();
        }
        LogForm g;
        if (f.level == 0) {
            const long double lo = std::max<long double>(f.lo, std::numeric_limits<long double>::denorm_min());
            const long double llo = log2_down(lo), lhi = log2_up(f.hi);
            g = LogForm{0, llo >= 0 ? llo / lb.hi : llo / lb.lo, lhi >= 0 ? lhi / lb.lo : lhi / lb.hi};
        } else {
            g = *f.log_base(lb.lo, lb.hi);
        }
        cur = ExtendedNumber::bounded(g);
    }
    return cur;
}

std::string to_string(BoundId id) {
    switch (id) {
        case BoundId::taylor_tower: return "taylor_tower";
        case BoundId::diag_tower: return "diag_tower";
        case BoundId::nelson_nomoto: return "nelson_nomoto";
        case BoundId::offdiag_f2: return "offdiag_f2";
        case BoundId::offdiag_f3: return "offdiag_f3";
        case BoundId::eq1_rhs: return "eq1_rhs";
        case BoundId::thm42_rhs: return "thm42_rhs";
        case BoundId::thm51_tower: return "thm51_tower";
        case BoundId::thm51_recursion: return "thm51_recursion";
        case BoundId::thm63: return "thm63";
        case BoundId::sec7_delta: return "sec7_delta";
        case BoundId::raff_diag: return "raff_diag";
        case BoundId::raff_offdiag: return "raff_offdiag";
    }
    return "unknown";
}

std::vector<BoundId> all_bound_ids() {
    return {BoundId::taylor_tower, BoundId::diag_tower,    BoundId::nelson_nomoto,
            BoundId::offdiag_f2,   BoundId::offdiag_f3,    BoundId::eq1_rhs,
            BoundId::thm42_rhs,    BoundId::thm51_tower,   BoundId::thm51_recursion,
            BoundId::thm63,        BoundId::sec7_delta,    BoundId::raff_diag,
            BoundId::raff_offdiag};
}

BoundId parse_bound_id(const std::string& name) {
    for (BoundId id : all_bound_ids())
        if (to_string(id) == name) return id;
    throw DomainError("unknown bound id: " + name);
}

std::vector<std::string> bound_parameters(BoundId id) {
    switch (id) {
        case BoundId::taylor_tower: return {"t", "k"};
        case BoundId::diag_tower: return {"q", "ts"};
        case BoundId::nelson_nomoto:
        case BoundId::offdiag_f2:
        case BoundId::offdiag_f3: return {"t"};
        case BoundId::eq1_rhs:
        case BoundId::thm42_rhs: return {"q", "t", "n"};
        case BoundId::thm51_tower:
        case BoundId::thm51_recursion:
        case BoundId::raff_offdiag: return {"q", "s", "t"};
        case BoundId::thm63: return {"t", "p", "r", "C"};
        case BoundId::sec7_delta: return {"t", "delta"};
        case BoundId::raff_diag: return {"q", "t", "k"};
    }
    return {};
}

long BoundParams::get_int(const std::string& name) const {
    const Rational v = get_rational(name);
    if (!is_integer(v)) throw DomainError("parameter " + name + " must be an integer");
    if (abs(numerator(v)) > BigInt(std::numeric_limits<long>::max() / 4))
        throw DomainError("parameter " + name + " is out of range");
    return numerator(v).convert_to<long>();
}

Rational BoundParams::get_rational(const std::string& name) const {
    const auto it = values_.find(name);
    if (it == values_.end()) throw DomainError("missing parameter " + name);
    try {
        return parse_rational(it->second);
    } catch (const std::exception&) {
        throw DomainError("parameter " + name + " is not a number: " + it->second);
    }
}

std::vector<long> BoundParams::get_int_list(const std::string& name) const {
    const auto it = values_.find(name);
    if (it == values_.end()) throw DomainError("missing parameter " + name);
    std::vector<long> out;
    std::stringstream in(it->second);
    std::string item;
    while (std::getline(in, item, ',')) {
        BoundParams one;
        one.set(name, item);
        out.push_back(one.get_int(name));
    }
    if (out.empty()) throw DomainError("parameter " + name + " is an empty list");
    return out;
}

long ceil_div(long a, long b) {
    if (b <= 0) throw DomainError("ceil_div needs a positive divisor");
    return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

ExtendedNumber eval_bound(BoundId id, const BoundParams& p, const BoundOptions& opt) {
    const std::size_t cap = opt.bits_cap;
    switch (id) {
        case BoundId::taylor_tower: {
            // k^(3^(k^(...^3))) with 2k(t-1) symbols in total, 3 on top.
            const long t = require_at_least(p, "t", 2);
            const long k = require_at_least(p, "k", 2);
            const long h = 2 * k * (t - 1);
            std::vector<Rational> bases;
            for (long i = 0; i + 1 < h; ++i) bases.emplace_back(i % 2 == 0 ? k : 3);
            return ExtendedNumber::tower(std::move(bases), 3, cap);
        }
        case BoundId::diag_tower: {
            const Rational sigma = sigma_of(p, opt);
            const auto ts = p.get_int_list("ts");
            if (ts.size() < 2) throw DomainError("parameter ts needs at least two entries");
            for (std::size_t i = 0; i < ts.size(); ++i) {
                if (ts[i] < 2) throw DomainError("parameter ts entries must be at least 2");
                if (i > 0 && ts[i] < ts[i - 1]) throw DomainError("parameter ts must be nondecreasing");
            }
            long h = 1;
            for (std::size_t i = 0; i + 1 < ts.size(); ++i) h += ts[i] - 1;
            std::vector<Rational> bases(static_cast<std::size_t>(tower_sigmas(h, opt.height)), sigma);
            return ExtendedNumber::tower(std::move(bases), BigInt(3 * ts.back()), cap);
        }
        case BoundId::nelson_nomoto: {
            const long t = require_at_least(p, "t", 1);
            if (static_cast<std::size_t>(t) + 64 <= cap) return ExtendedNumber::exact(BigInt(t + 1) << t);
            const long double l = std::log2(static_cast<long double>(t + 1)) + t;
            return from_log2(l, (l + 1) * 1e-17L);
        }
        case BoundId::offdiag_f2: {
            const long t = require_at_least(p, "t", 1);
            const long k = ceil_div(t, 4);
            return product_bound(t, 6, k, 4 * k, cap);
        }
        case BoundId::offdiag_f3: {
            const long t = require_at_least(p, "t", 1);
            return product_bound(t, opt.sidorenko.sigma3, t, t, cap);
        }
        case BoundId::thm63: {
            const long t = require_at_least(p, "t", 2);
            const long pp = require_at_least(p, "p", 1);
            const long r = require_at_least(p, "r", 2);
            const Rational c = p.get_rational("C");
            if (c < 1) throw DomainError("parameter C must be at least 1");
            const long k = ceil_div(t, pp);
            return product_bound(t, c, k, (r - 1) * k, cap);
        }
        case BoundId::eq1_rhs: {
            const Rational sigma = sigma_of(p, opt);
            const long q = p.get_int("q");
            const long t = require_at_least(p, "t", 1);
            const long n = require_at_least(p, "n", 0);
            const Rational e = Rational(n) - Rational(n) / ((sigma - 1) * rpow(sigma, static_cast<unsigned>(t - 1))) + 2;
            return power_of(static_cast<int>(q), e, cap);
        }
        case BoundId::thm42_rhs: {
            const Rational sigma = sigma_of(p, opt);
            const long q = p.get_int("q");
            const long t = require_at_least(p, "t", 1);
            const long n = require_at_least(p, "n", 0);
            const Rational e = Rational(n) - Rational(n - t) / (rpow(sigma, static_cast<unsigned>(t)) - t);
            return power_of(static_cast<int>(q), e, cap);
        }
        case BoundId::thm51_tower: {
            const Rational sigma = sigma_of(p, opt);
            const long s = require_at_least(p, "s", 1);
            const long t = require_at_least(p, "t", 1);
            std::vector<Rational> bases(static_cast<std::size_t>(tower_sigmas(s, opt.height)), sigma);
            return ExtendedNumber::tower(std::move(bases), BigInt(2 * t), cap);
        }
        case BoundId::thm51_recursion: {
            // R(1, t) = t and R(s, t) <= t sigma^R(s-1, t).
            const Rational sigma = sigma_of(p, opt);
            const long s = require_at_least(p, "s", 1);
            const long t = require_at_least(p, "t", 1);
            ExtendedNumber r = ExtendedNumber::exact(t);
            for (long i = 2; i <= s; ++i) r = times_power(t, sigma, r, cap);
            return r;
        }
        case BoundId::sec7_delta: {
            const long t = require_at_least(p, "t", 1);
            const Rational delta = p.get_rational("delta");
            if (delta <= 0) throw DomainError("parameter delta must be positive");
            const Rational base = 2 + 1 / delta;
            const Interval lb = log2_rational(base);
            if (t * lb.hi <= static_cast<long double>(cap))
                return from_rational(Rational(t) * rpow(base, static_cast<unsigned>(t)), cap);
            const long double lt = std::log2(static_cast<long double>(t));
            return ExtendedNumber::bounded(LogForm{1, down(lt + t * lb.lo, 1e-15L), up(lt + t * lb.hi, 1e-15L)});
        }
        case BoundId::raff_diag: {
            const Rational sigma = sigma_of(p, opt);
            const long t = require_at_least(p, "t", 1);
            const long k = require_at_least(p, "k", 2);
            const Rational st = rpow(sigma, static_cast<unsigned>(t));
            if ((k & (k - 1)) == 0) return from_rational(st * std::countr_zero(static_cast<unsigned long>(k)), cap);
            const long double v = std::log2(static_cast<long double>(k)) * to_long_double(st);
            return ExtendedNumber::real(v, std::fabs(v) * 1e-15L);
        }
        case BoundId::raff_offdiag: {
            const Rational sigma = sigma_of(p, opt);
            const long q = p.get_int("q");
            const long s = require_at_least(p, "s", 1);
            const long t = require_at_least(p, "t", 1);
            const Rational rest = (sigma - 1) * rpow(sigma, static_cast<unsigned>(s - 1)) * t;
            if (q == 2) return from_rational(rest, cap);  // log_2 sigma_2 = 1
            const Interval ls = log2_rational(sigma);
            const long double v = (ls.lo + ls.hi) / 2 / std::log2(static_cast<long double>(q)) * to_long_double(rest);
            return ExtendedNumber::real(v, std::fabs(v) * 1e-14L);
        }
    }
    throw DomainError("unknown bound id");
}

}  // namespace afflab
