#include "cli.hpp"

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "afflab/acceptance.hpp"
#include "afflab/bounds.hpp"
#include "afflab/extremal.hpp"
#include "afflab/hom.hpp"
#include "afflab/oracle.hpp"
#include "afflab/parallel.hpp"
#include "afflab/ramsey.hpp"
#include "afflab/sidorenko.hpp"
#include "afflab/space.hpp"

#ifndef AFFLAB_VERSION
#define AFFLAB_VERSION "0.0.0"
#endif

namespace afflab::cli {

namespace {

// Largest ambient space the CLI accepts.
constexpr Index kMaxPoints = Index{1} << 32;

struct Globals {
    bool json = false;
    bool csv = false;
    bool oracle = false;
    unsigned threads = 0;
    std::string budget;
    std::uint64_t seed = 0;
};

struct Outcome {
    Json result;
    int code = ok;
    std::optional<std::string> csv;
    bool streamed = false;  // plain output already written
};

// Raised for checks that the --oracle cross-validation rejects.
struct OracleMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Inputs {
public:
    std::string text(const std::string& name, const std::string& src) {
        std::string body;
        if (!src.empty() && (src.front() == '{' || src.front() == '[')) {
            body = src;
        } else {
            std::ifstream in(src, std::ios::binary);
            if (!in) throw DomainError("cannot read " + name + " file '" + src + "'");
            std::stringstream ss;
            ss << in.rdbuf();
            body = ss.str();
        }
        digests_[name] = sha256_hex(body);
        return body;
    }

    AffineConfiguration config(const std::string& name, const std::string& src) {
        const bool literal = !src.empty() && (src.front() == '{' || std::filesystem::exists(src));
        if (!literal) {
            digests_[name] = sha256_hex(src);
            return make_named(src);
        }
        return config_from_json(parse(text(name, src)));
    }

    PointSet set(const std::string& name, const std::string& src) {
        return point_set_from_json(parse(text(name, src)));
    }

    const std::map<std::string, std::string>& digests() const { return digests_; }

    static Json parse(const std::string& body) {
        try {
            return Json::parse(body);
        } catch (const Json::parse_error& e) {
            throw DomainError(std::string("malformed JSON: ") + e.what());
        }
    }

private:
    std::map<std::string, std::string> digests_;
};

std::string iso_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void check_space(int q, int n) {
    const VectorSpace sp(q, n);
    if (sp.size() > kMaxPoints) throw DomainError("q^n exceeds 2^32 points");
}

Json number(long double v) { return std::isfinite(v) ? Json(static_cast<double>(v)) : Json(); }

Json to_json(const Margin& m) {
    Json j;
    j["value"] = number(m.value);
    j["exact"] = m.exact ? Json(to_string(*m.exact)) : Json();
    j["scale"] = number(m.scale);
    return j;
}

int verdict_code(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::verified: return ok;
        case VerdictStatus::counterexample: return violation;
        case VerdictStatus::inconclusive: return budget;
    }
    return internal;
}

Json to_json(const SidorenkoVerdict& v) {
    Json j;
    j["status"] = to_string(v.status);
    j["witness"] = v.witness ? to_json(*v.witness) : Json();
    j["margin"] = to_json(v.margin);
    j["required_c"] = v.required_c ? number(*v.required_c) : Json();
    j["n_checked"] = v.n_checked;
    j["subsets_examined"] = big_to_json(v.subsets_examined);
    j["boundary"] = v.boundary;
    j["note"] = v.note;
    return j;
}

Json to_json(const SearchReport& r) {
    Json j;
    j["status"] = to_string(r.status);
    j["value"] = r.value ? Json(*r.value) : Json();
    j["witness"] = r.witness ? to_json(*r.witness) : Json();
    j["nodes"] = r.nodes;
    j["seed"] = r.seed;
    return j;
}

Json to_json(const ColoringWitness& w) {
    Json j;
    j["n"] = w.n;
    j["classes"] = w.representatives();
    return j;
}

Json to_json(const RamseyFrontier& f) {
    Json j;
    j["n"] = f.n;
    j["colors"] = f.colors;
    return j;
}

RamseyFrontier frontier_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("colors"))
        throw DomainError("frontier needs \"n\" and \"colors\"");
    RamseyFrontier f;
    f.n = j["n"].get<int>();
    f.colors = j["colors"].get<std::vector<int>>();
    return f;
}

Json to_json(const ExtendedNumber& x) {
    Json j;
    if (const BigInt* v = x.exact_value())
        j["value"] = big_to_json(*v);
    else if (std::holds_alternative<RealValue>(x.form()))
        j["value"] = number(x.approx());
    else
        j["value"] = x.str();
    j["form"] = x.form_name();
    j["text"] = x.str();
    return j;
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string cell;
    bool quoted = false, any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quoted) {
            if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
                cell += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cell += c;
            }
            continue;
        }
        if (c == '"') {
            quoted = any = true;
        } else if (c == ',') {
            row.push_back(std::move(cell));
            cell.clear();
            any = true;
        } else if (c == '\n' || c == '\r') {
            if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            if (any || !cell.empty()) {
                row.push_back(std::move(cell));
                rows.push_back(std::move(row));
            }
            cell.clear();
            row.clear();
            any = false;
        } else {
            cell += c;
            any = true;
        }
    }
    if (quoted) throw DomainError("unterminated quote in CSV");
    if (any || !cell.empty()) {
        row.push_back(std::move(cell));
        rows.push_back(std::move(row));
    }
    return rows;
}

// "t=2..12" or "t=5"
std::pair<std::string, std::vector<long>> parse_range(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) throw DomainError("range '" + text + "' must look like name=lo..hi");
    const std::string name = text.substr(0, eq), body = text.substr(eq + 1);
    const auto dots = body.find("..");
    try {
        const long lo = std::stol(body.substr(0, dots));
        const long hi = dots == std::string::npos ? lo : std::stol(body.substr(dots + 2));
        if (hi < lo || hi - lo > 100000) throw DomainError("empty or oversized range '" + text + "'");
        std::vector<long> values;
        for (long v = lo; v <= hi; ++v) values.push_back(v);
        return {name, values};
    } catch (const std::logic_error& e) {
        if (dynamic_cast<const DomainError*>(&e)) throw;
        throw DomainError("range '" + text + "' must look like name=lo..hi");
    }
}

HeightConvention parse_height(const std::string& s) {
    if (s == "sigma_count") return HeightConvention::sigma_count;
    if (s == "levels") return HeightConvention::levels;
    throw DomainError("height must be sigma_count or levels");
}

Exponent parse_exponent(const std::string& s) {
    try {
        return Exponent::parse(s);
    } catch (const std::exception&) {
        throw DomainError("bad exponent '" + s + "'");
    }
}

}  // namespace

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw InvariantViolation("SHA-256 failed");
    std::ostringstream out;
    for (unsigned i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return out.str();
}

std::string table_to_csv(const Json& table) {
    std::string out;
    const auto& cols = table.at("columns");
    for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + csv_cell(cols[i].get<std::string>());
    out += "\n";
    for (const auto& row : table.at("rows")) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_cell(row[i].get<std::string>());
        out += "\n";
    }
    return out;
}

Json table_from_csv(const std::string& id, const std::string& csv) {
    const auto rows = parse_csv(csv);
    if (rows.empty()) throw DomainError("CSV table needs a header line");
    Json j;
    j["id"] = id;
    j["columns"] = rows[0];
    j["rows"] = Json::array();
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].size() != rows[0].size()) throw DomainError("CSV row " + std::to_string(i) + " has the wrong width");
        j["rows"].push_back(rows[i]);
    }
    return j;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Globals g;
    Inputs inputs;
    std::function<Outcome()> action;

    CLI::App app{"Exact computations on affine configurations over small prime fields", "afflab"};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_version_flag("--version", AFFLAB_VERSION);
    app.add_flag("--json", g.json, "Emit the full JSON document with its run manifest");
    app.add_flag("--csv", g.csv, "Emit CSV (bound tables)");
    app.add_flag("--oracle", g.oracle, "Re-check results with the brute-force reference implementations");
    app.add_option("--threads", g.threads, "Worker threads (0 = logical cores)");
    app.add_option("--budget", g.budget, "Work budget: membership tests for counting, nodes for searches");
    app.add_option("--seed", g.seed, "Seed for all randomness");

    auto work_budget = [&] { return g.budget.empty() ? kDefaultWorkBudget : BigInt(g.budget); };
    auto node_budget = [&](std::uint64_t fallback) -> std::uint64_t {
        if (g.budget.empty()) return fallback;
        const BigInt b(g.budget);
        return b > BigInt(std::numeric_limits<std::int64_t>::max()) ? std::numeric_limits<std::int64_t>::max()
                                                                     : static_cast<std::uint64_t>(b);
    };
    const SidorenkoParams sparams = SidorenkoParams::from_environment();

    // hom-count
    std::string config_src, set_src, mode = "exact";
    std::uint64_t samples = 100000;
    auto* hom = app.add_subcommand("hom-count", "Count affine homomorphisms B -> A");
    hom->add_option("--config", config_src, "Configuration: JSON file, inline JSON, cube:q:t or circuit:k")->required();
    hom->add_option("--set", set_src, "Host point set: JSON file or inline JSON")->required();
    hom->add_option("--mode", mode, "exact or mc")->check(CLI::IsMember({"exact", "mc"}));
    hom->add_option("--samples", samples, "Monte-Carlo samples");
    hom->callback([&] {
        action = [&] {
            const auto b = inputs.config("config", config_src);
            const auto a = inputs.set("set", set_src);
            HomCountOptions o;
            o.mode = mode == "mc" ? CountMode::monte_carlo : CountMode::exact;
            o.samples = samples;
            o.seed = g.seed;
            o.budget = work_budget();
            const auto r = hom_count(b, a, o);
            Outcome res;
            Json& j = res.result;
            j["rank_aff"] = b.rank_affine();
            if (o.mode == CountMode::exact) {
                j["method"] = "exact";
                j["total"] = big_to_json(r.total);
                j["degenerate"] = big_to_json(r.degenerate);
                j["nondegenerate"] = big_to_json(r.nondegenerate);
                j["aut_order"] = r.aut_order ? big_to_json(*r.aut_order) : Json();
                j["copies"] = r.copies ? big_to_json(*r.copies) : Json();
            } else {
                j["method"] = "monte_carlo";
                j["estimate"] = number(r.estimate);
                j["std_error"] = number(r.std_error);
                j["samples"] = r.samples;
                j["hits"] = r.hits;
                j["seed"] = r.seed;
            }
            if (g.oracle) {
                const BigInt total = oracle::hom_count(b, a);
                j["oracle"] = {{"total", big_to_json(total)}};
                if (o.mode == CountMode::exact && total != r.total) throw OracleMismatch("hom count disagrees with the oracle");
            }
            return res;
        };
    });

    // copies
    auto* copies = app.add_subcommand("copies", "Copies of B inside A");
    copies->add_option("--config", config_src, "Configuration")->required();
    copies->add_option("--set", set_src, "Host point set")->required();
    copies->callback([&] {
        action = [&] {
            const auto b = inputs.config("config", config_src);
            const auto a = inputs.set("set", set_src);
            Outcome res;
            const bool has = contains_copy(b, a);
            res.result["contains_copy"] = has;
            res.result["copies"] = big_to_json(copy_count(b, a, work_budget()));
            res.result["aut_order"] = big_to_json(aut_order(b));
            if (g.oracle) {
                const bool free = oracle::is_free(b, a);
                res.result["oracle"] = {{"free", free}};
                if (free == has) throw OracleMismatch("copy detection disagrees with the oracle");
            }
            return res;
        };
    });

    // rank
    auto* rank = app.add_subcommand("rank", "Affine and linear rank of a configuration");
    rank->add_option("--config", config_src, "Configuration")->required();
    rank->callback([&] {
        action = [&] {
            const auto b = inputs.config("config", config_src);
            Outcome res;
            res.result["size"] = b.size();
            res.result["rank_aff"] = b.rank_affine();
            res.result["rank_lin"] = b.rank_linear();
            res.result["affine_basis"] = b.affine_basis();
            res.result["configuration"] = to_json(b);
            return res;
        };
    });

    // direction-set
    auto* dirs = app.add_subcommand("direction-set", "Directions of full lines inside A");
    dirs->add_option("--set", set_src, "Point set")->required();
    dirs->callback([&] {
        action = [&] {
            const auto a = inputs.set("set", set_src);
            const PointSet d = direction_set(a);
            Outcome res;
            res.result["size"] = d.size();
            res.result["direction_set"] = to_json(d);
            if (g.oracle && !(oracle::direction_set(a) == d)) throw OracleMismatch("direction set disagrees with the oracle");
            return res;
        };
    });

    // omega
    auto* omega = app.add_subcommand("omega", "Largest subspaces inside A, its affine flats and its direction set");
    omega->add_option("--set", set_src, "Point set")->required();
    omega->callback([&] {
        action = [&] {
            const auto a = inputs.set("set", set_src);
            Outcome res;
            const int lin = omega_linear(a), arrow = omega_arrow(a);
            const auto aff = omega_affine(a);
            res.result["omega"] = lin;
            res.result["omega_aff"] = aff ? Json(*aff) : Json();
            res.result["omega_arrow"] = arrow;
            if (g.oracle) {
                const int ol = oracle::omega(a, oracle::OmegaKind::linear);
                const int oa = oracle::omega(a, oracle::OmegaKind::affine);
                const int od = oracle::omega(a, oracle::OmegaKind::arrow);
                res.result["oracle"] = {{"omega", ol}, {"omega_aff", oa < 0 ? Json() : Json(oa)}, {"omega_arrow", od}};
                if (ol != lin || oa != aff.value_or(-1) || od != arrow) throw OracleMismatch("omega disagrees with the oracle");
            }
            return res;
        };
    });

    // product
    std::string left_src, right_src;
    auto* prod = app.add_subcommand("product", "Product configuration B1 x B2");
    prod->add_option("--left", left_src, "First factor")->required();
    prod->add_option("--right", right_src, "Second factor")->required();
    prod->callback([&] {
        action = [&] {
            const auto l = inputs.config("left", left_src);
            const auto r = inputs.config("right", right_src);
            const auto p = product(l, r);
            Outcome res;
            res.result["size"] = p.size();
            res.result["rank_aff"] = p.rank_affine();
            res.result["rank_aff_factors"] = {l.rank_affine(), r.rank_affine()};
            res.result["configuration"] = to_json(p);
            return res;
        };
    });

    // sidorenko
    std::string c_text = "2", c2_text = "2", d_text = "2";
    int n = 1;
    auto* sid = app.add_subcommand("sidorenko", "Weakly-Sidorenko checks");
    sid->require_subcommand(1);
    auto* sv = sid->add_subcommand("verify", "Check hom(B, A) >= alpha^C N^r for every A in F_q^n");
    sv->add_option("--config", config_src, "Configuration")->required();
    sv->add_option("--c", c_text, "Exponent C (decimal or p/q)")->required();
    sv->add_option("--n", n, "Ambient dimension")->required();
    sv->callback([&] {
        action = [&] {
            const auto b = inputs.config("config", config_src);
            check_space(b.q(), n);
            const auto v = verify_exhaustive(b, parse_exponent(c_text), n, {work_budget(), g.seed});
            return Outcome{to_json(v), verdict_code(v.status), {}};
        };
    });
    auto* sa = sid->add_subcommand("adversary", "Search hosts maximising the required exponent");
    sa->add_option("--config", config_src, "Configuration")->required();
    sa->add_option("--n", n, "Ambient dimension")->required();
    sa->callback([&] {
        action = [&] {
            const auto b = inputs.config("config", config_src);
            check_space(b.q(), n);
            const auto v = adversary_search(b, n, {work_budget(), g.seed});
            return Outcome{to_json(v), ok, {}};
        };
    });
    auto* ss = sid->add_subcommand("supersat", "Copy counts of sets at the supersaturation threshold");
    ss->add_option("--config", config_src, "Configuration")->required();
    ss->add_option("--c", c_text, "Exponent C")->required();
    ss->add_option("--n", n, "Ambient dimension")->required();
    ss->add_option("--d", d_text, "Density factor D");
    std::uint64_t sid_samples = 100;
    ss->add_option("--samples", sid_samples, "Sets sampled when enumeration is too large");
    ss->callback([&] {
        action = [&] {
            const auto b = inputs.config("config", config_src);
            check_space(b.q(), n);
            const auto r = supersaturation_check(b, parse_exponent(c_text), n, to_long_double(parse_rational(d_text)),
                                                 sid_samples, {work_budget(), g.seed});
            Outcome res;
            Json& j = res.result;
            j["set_size"] = r.set_size;
            j["sets_tested"] = big_to_json(r.sets_tested);
            j["exhaustive"] = r.exhaustive;
            j["all_exceed"] = r.all_exceed;
            j["min_slack"] = number(r.min_slack);
            j["worst"] = r.worst ? to_json(*r.worst) : Json();
            j["implies_copy"] = r.implies_copy;
            j["copy_implication_ok"] = r.copy_implication_ok;
            j["conditional"] = r.conditional;
            res.code = r.all_exceed && r.copy_implication_ok ? ok : violation;
            return res;
        };
    });
    auto* sp = sid->add_subcommand("product", "Weakly-Sidorenko check of a product with exponent C1 * C2");
    sp->add_option("--left", left_src, "First factor")->required();
    sp->add_option("--c1", c_text, "Exponent of the first factor")->required();
    sp->add_option("--right", right_src, "Second factor")->required();
    sp->add_option("--c2", c2_text, "Exponent of the second factor")->required();
    sp->add_option("--n", n, "Ambient dimension")->required();
    sp->add_option("--samples", sid_samples, "Sets sampled when enumeration is too large");
    sp->callback([&] {
        action = [&] {
            const auto l = inputs.config("left", left_src);
            const auto r = inputs.config("right", right_src);
            check_space(l.q(), n);
            const auto rep = product_sidorenko_check(l, parse_exponent(c_text), r, parse_exponent(c2_text), n, sid_samples,
                                                     g.seed, {work_budget(), g.seed});
            if (!rep.decomposition_ok) throw InvariantViolation("product hom count disagrees with its decomposition");
            Outcome res;
            Json& j = res.result;
            j["preconditions_met"] = rep.preconditions_met;
            j["precondition_note"] = rep.precondition_note;
            j["product_exponent"] = rep.product_exponent.str();
            j["sets_tested"] = big_to_json(rep.sets_tested);
            j["exhaustive"] = rep.exhaustive;
            j["violated"] = rep.violated;
            j["worst_margin"] = to_json(rep.worst);
            j["worst_set"] = rep.worst_set ? to_json(*rep.worst_set) : Json();
            j["decomposition_ok"] = rep.decomposition_ok;
            res.code = rep.violated ? violation : ok;
            return res;
        };
    });

    // exaff
    int q = 3, t = 1, n_max = 5;
    std::vector<std::string> family_src;
    std::string ex_mode = "exact";
    auto* ex = app.add_subcommand("exaff", "Largest subset of F_q^n free of every family member");
    ex->add_option("--q", q, "Field order")->required();
    ex->add_option("--n", n, "Ambient dimension")->required();
    ex->add_option("--family", family_src, "Forbidden configuration (repeatable)")->required();
    ex->add_option("--mode", ex_mode, "exact, lower or decision:k");
    ex->callback([&] {
        action = [&] {
            check_space(q, n);
            ExtremalQuery query;
            query.q = q;
            query.n = n;
            for (std::size_t i = 0; i < family_src.size(); ++i)
                query.family.push_back(inputs.config("family[" + std::to_string(i) + "]", family_src[i]));
            query.seed = g.seed;
            query.node_budget = node_budget(query.node_budget);
            if (ex_mode == "exact") {
                query.mode = ExtremalQuery::Mode::exact;
            } else if (ex_mode == "lower") {
                query.mode = ExtremalQuery::Mode::lower_only;
            } else if (ex_mode.rfind("decision:", 0) == 0) {
                query.mode = ExtremalQuery::Mode::decision;
                try {
                    query.target = std::stol(ex_mode.substr(9));
                } catch (const std::exception&) {
                    throw DomainError("decision mode needs decision:k");
                }
            } else {
                throw DomainError("mode must be exact, lower or decision:k");
            }
            const auto r = ex_aff(query);
            Outcome res;
            res.result = to_json(r);
            res.result["mode"] = ex_mode;
            if (query.mode == ExtremalQuery::Mode::exact && r.status != SearchStatus::complete) res.code = budget;
            if (query.mode == ExtremalQuery::Mode::decision && r.status != SearchStatus::complete) res.code = budget;
            // Compare with the closed-form bounds when the family is one cube.
            const auto& f = query.family;
            if (query.mode == ExtremalQuery::Mode::exact && r.status == SearchStatus::complete && f.size() == 1 &&
                f[0].size() == ipow(BigInt(q), static_cast<unsigned>(f[0].dim())) && (q == 2 || q == 3)) {
                const auto bc = check_bound_formulas(q, f[0].dim(), n, *r.value, sparams.sigma(q));
                Json b;
                b["thm42_rhs"] = number(bc.thm42_rhs);
                b["below_thm42"] = bc.below_thm42;
                b["eq1_applicable"] = bc.eq1_applicable;
                b["eq1_rhs"] = bc.eq1_applicable ? number(bc.eq1_rhs) : Json();
                b["below_eq1"] = bc.eq1_applicable ? Json(bc.below_eq1) : Json();
                res.result["bounds"] = b;
            }
            if (g.oracle) {
                Json o;
                if (r.witness) {
                    bool free = true;
                    for (const auto& b : f) free = free && oracle::is_free(b, *r.witness);
                    o["witness_free"] = free;
                    if (!free) throw OracleMismatch("witness contains a forbidden copy");
                }
                if (VectorSpace(q, n).size() <= 20 && query.mode == ExtremalQuery::Mode::exact && r.value) {
                    const long brute = ex_aff_brute_force(f, q, n);
                    o["brute_force"] = brute;
                    if (brute != *r.value) throw OracleMismatch("value disagrees with full enumeration");
                }
                res.result["oracle"] = o;
            }
            return res;
        };
    });

    // ramsey
    std::vector<int> targets;
    std::string resume_src;
    auto* ram = app.add_subcommand("ramsey", "Projective Ramsey numbers R_q(t_1, ..., t_k)");
    ram->add_option("--q", q, "Field order")->required();
    ram->add_option("--targets", targets, "Target dimensions, comma separated")->required()->delimiter(',');
    ram->add_option("--nmax", n_max, "Largest dimension searched");
    ram->add_option("--resume", resume_src, "Frontier JSON from an earlier run");
    ram->callback([&] {
        action = [&] {
            RamseyQuery query;
            query.q = q;
            query.targets = targets;
            query.n_max = n_max;
            query.seed = g.seed;
            query.node_budget = node_budget(query.node_budget);
            std::optional<RamseyFrontier> resume;
            if (!resume_src.empty()) {
                Json fj = Inputs::parse(inputs.text("resume", resume_src));
                if (fj.contains("frontier")) fj = fj["frontier"];
                resume = frontier_from_json(fj);
            }
            const auto r = ramsey_search(query, resume);
            Outcome res;
            Json& j = res.result;
            j["status"] = to_string(r.search.status);
            j["value"] = r.search.value ? Json(*r.search.value) : Json();
            j["deepest_complete"] = r.deepest_complete;
            j["nodes"] = r.search.nodes;
            j["lower_witness"] = r.lower_witness ? to_json(*r.lower_witness) : Json();
            j["frontier"] = r.frontier ? to_json(*r.frontier) : Json();
            if (r.search.status == SearchStatus::unknown) res.code = budget;
            if (g.oracle && r.lower_witness) {
                bool good = r.lower_witness->is_partition();
                for (std::size_t i = 0; i < r.lower_witness->classes.size(); ++i)
                    good = good && oracle::omega(r.lower_witness->classes[i], oracle::OmegaKind::linear) < targets[i];
                j["oracle"] = {{"lower_witness_ok", good}};
                if (!good) throw OracleMismatch("coloring witness contains a target subspace");
            }
            return res;
        };
    });

    // bose-burton
    auto* bb = app.add_subcommand("bose-burton", "Largest projective sets without a t-dimensional subspace");
    bb->add_option("--q", q, "Field order")->required();
    bb->add_option("--n", n, "Dimension")->required();
    bb->add_option("--t", t, "Subspace dimension")->required();
    bb->callback([&] {
        action = [&] {
            const auto r = bose_burton(q, n, t);
            Outcome res;
            Json& j = res.result;
            j["max_size"] = r.max_size;
            j["formula"] = r.formula;
            j["formula_ok"] = r.formula_ok;
            j["uniqueness_ok"] = r.uniqueness_ok;
            j["maximizers"] = r.witnesses.size();
            j["expected_maximizers"] = big_to_json(r.expected_maximizers);
            j["witnesses"] = Json::array();
            for (const auto& w : r.witnesses) j["witnesses"].push_back(projective_support(w));
            res.code = r.formula_ok && r.uniqueness_ok ? ok : violation;
            return res;
        };
    });

    // mq
    auto* mq = app.add_subcommand("mq", "m_q(t): least n forcing a t-subspace in the direction set");
    mq->add_option("--q", q, "Field order")->required();
    mq->add_option("--t", t, "Subspace dimension")->required();
    mq->add_option("--nmax", n_max, "Largest dimension searched");
    mq->callback([&] {
        action = [&] {
            const auto r = mq_search(q, t, n_max, node_budget(std::uint64_t{1} << 34));
            Outcome res;
            Json& j = res.result;
            j["status"] = to_string(r.search.status);
            j["value"] = r.search.value ? Json(*r.search.value) : Json();
            j["decisions"] = Json::array();
            bool oracle_ok = true;
            for (const auto& d : r.decisions) {
                Json dj;
                dj["n"] = d.n;
                dj["set_size"] = d.set_size;
                dj["witness_exists"] = d.witness_exists;
                dj["witness"] = d.witness ? to_json(*d.witness) : Json();
                dj["exhausted"] = d.exhausted;
                dj["nodes"] = d.nodes;
                j["decisions"].push_back(dj);
                if (g.oracle && d.witness)
                    oracle_ok = oracle_ok && oracle::omega(oracle::direction_set(*d.witness), oracle::OmegaKind::linear) < t;
            }
            if (g.oracle) {
                j["oracle"] = {{"witnesses_ok", oracle_ok}};
                if (!oracle_ok) throw OracleMismatch("an m_q witness has a t-subspace in its direction set");
            }
            if (r.search.status == SearchStatus::unknown || r.search.status == SearchStatus::incomplete) res.code = budget;
            return res;
        };
    });

    // bound
    std::string bound_id, height = "sigma_count";
    std::map<std::string, std::string> bparams;
    std::vector<std::string> ranges;
    auto* bound = app.add_subcommand("bound", "Closed-form bounds");
    bound->require_subcommand(1);
    auto add_params = [&](CLI::App* sub) {
        sub->add_option("--id", bound_id, "Bound id")->required();
        sub->add_option("--height", height, "Tower height convention: sigma_count or levels");
        for (const char* name : {"q", "t", "k", "ts", "n", "s", "p", "r", "C", "delta"})
            sub->add_option(std::string("--") + name, bparams[name], std::string("Parameter ") + name);
    };
    auto bound_options = [&] {
        BoundOptions o;
        o.sidorenko = sparams;
        o.height = parse_height(height);
        return o;
    };
    auto fixed_params = [&] {
        BoundParams p;
        for (const auto& [k, v] : bparams)
            if (!v.empty()) p.set(k, v);
        return p;
    };
    auto* be = bound->add_subcommand("eval", "Evaluate one bound");
    add_params(be);
    be->callback([&] {
        action = [&] {
            const BoundId id = parse_bound_id(bound_id);
            const BoundParams p = fixed_params();
            Outcome res;
            res.result = to_json(eval_bound(id, p, bound_options()));
            res.result["id"] = to_string(id);
            res.result["params"] = p.values();
            return res;
        };
    });
    auto* bt = bound->add_subcommand("table", "Tabulate a bound over parameter ranges");
    add_params(bt);
    bt->add_option("--range", ranges, "name=lo..hi (repeatable)")->required();
    bt->callback([&] {
        action = [&] {
            const BoundId id = parse_bound_id(bound_id);
            std::vector<std::pair<std::string, std::vector<long>>> rs;
            for (const auto& r : ranges) rs.push_back(parse_range(r));
            BoundParams base = fixed_params();
            std::vector<std::string> names;
            for (const auto& name : bound_parameters(id))
                if (base.has(name) || std::any_of(rs.begin(), rs.end(), [&](const auto& r) { return r.first == name; }))
                    names.push_back(name);
            Json table;
            table["id"] = to_string(id);
            table["columns"] = names;
            table["columns"].push_back("value");
            table["columns"].push_back("form");
            table["rows"] = Json::array();
            // Odometer over the ranges, last one fastest.
            std::vector<std::size_t> pos(rs.size(), 0);
            for (;;) {
                BoundParams p = base;
                for (std::size_t i = 0; i < rs.size(); ++i) p.set(rs[i].first, rs[i].second[pos[i]]);
                const auto v = eval_bound(id, p, bound_options());
                Json row = Json::array();
                for (const auto& name : names) row.push_back(p.values().at(name));
                row.push_back(v.str());
                row.push_back(v.form_name());
                table["rows"].push_back(row);
                std::size_t i = rs.size();
                while (i > 0 && ++pos[i - 1] == rs[i - 1].second.size()) pos[--i] = 0;
                if (i == 0) break;
            }
            Outcome res;
            res.csv = table_to_csv(table);
            res.result = std::move(table);
            return res;
        };
    });

    // verify-paper
    std::vector<int> only;
    auto* vp = app.add_subcommand("verify-paper", "Run the acceptance suite and print a pass/fail table");
    vp->add_option("--only", only, "Criterion ids, comma separated")->delimiter(',');
    vp->callback([&] {
        action = [&] {
            AcceptanceOptions o;
            o.only.insert(only.begin(), only.end());
            o.seed = g.seed ? g.seed : o.seed;
            Outcome res;
            res.result["criteria"] = Json::array();
            bool all = true;
            for (const auto& r : run_acceptance(o, [&](const CriterionResult& c) {
                     if (!g.json) out << format_result_line(c) << std::endl;
                 })) {
                res.result["criteria"].push_back({{"id", r.id},
                                                  {"title", r.title},
                                                  {"passed", r.passed},
                                                  {"detail", r.detail},
                                                  {"seconds", r.seconds},
                                                  {"limit_seconds", r.limit_seconds}});
                all = all && r.passed;
            }
            res.result["all_passed"] = all;
            res.code = all ? ok : violation;
            res.streamed = true;
            return res;
        };
    });

    const std::string started = iso_now();
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : usage;
    }

    Json doc;
    int code = ok;
    try {
        if (g.csv && g.json) throw DomainError("--csv and --json are exclusive");
        set_thread_count(g.threads);
        if (!action) throw DomainError("no command");
        Outcome o = action();
        if (g.csv && !o.csv) throw DomainError("--csv applies to bound table only");
        if (g.csv) {
            out << *o.csv;
            return o.code;
        }
        if (o.streamed && !g.json) return o.code;
        doc = std::move(o.result);
        code = o.code;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        doc = {{"error", e.what()}, {"kind", "usage"}};
        code = usage;
    } catch (const CLI::Error& e) {
        err << "error: " << e.what() << "\n";
        doc = {{"error", e.what()}, {"kind", "usage"}};
        code = usage;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        doc = {{"error", e.what()}, {"kind", "budget"}, {"required", big_to_json(e.required())}};
        code = budget;
    } catch (const OracleMismatch& e) {
        err << "oracle mismatch: " << e.what() << "\n";
        doc = {{"error", e.what()}, {"kind", "oracle"}};
        code = internal;
    } catch (const InvariantViolation& e) {
        err << "internal error: " << e.what() << "\n";
        doc = {{"error", e.what()}, {"kind", "internal"}};
        code = internal;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        doc = {{"error", e.what()}, {"kind", "internal"}};
        code = internal;
    }

    if (!g.json) {
        // Plain output: one line per top-level field.
        for (const auto& [k, v] : doc.items()) out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
        return code;
    }
    Json manifest;
    manifest["command_line"] = args;
    manifest["tool_version"] = AFFLAB_VERSION;
    manifest["seed"] = g.seed;
    manifest["budgets"] = {{"work", g.budget.empty() ? kDefaultWorkBudget.str() : g.budget}};
    manifest["sigma3"] = to_string(sparams.sigma3);
    manifest["threads"] = thread_count();
    manifest["started"] = started;
    manifest["finished"] = iso_now();
    manifest["input_digests"] = inputs.digests();
    manifest["result_digest"] = sha256_hex(doc.dump());
    doc["manifest"] = manifest;
    out << doc.dump(2) << "\n";
    return code;
}

}  // namespace afflab::cli
