#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "afflab/point_set.hpp"
#include "afflab/search_report.hpp"

namespace afflab {

struct RamseyQuery {
    int q = 2;
    std::vector<int> targets;
    int n_max = 5;
    std::uint64_t node_budget = std::uint64_t{1} << 34;
    std::uint64_t seed = 0;
};

/// A projectively determined coloring of F_q^n \ {0}.
struct ColoringWitness {
    int q = 2;
    int n = 0;
    std::vector<PointSet> classes;

    /// Canonical representatives of each class's 1-subspaces.
    std::vector<std::vector<Index>> representatives() const;
    bool is_partition() const;
    bool avoids(const std::vector<int>& targets) const;  // omega(class_i) < t_i
};

/// Saved state of a single-n coloring DFS: colors of a prefix of the
/// projective points, in search order.
struct RamseyFrontier {
    int n = 0;
    std::vector<int> colors;
};

struct RamseyReport {
    SearchReport search;  // value = R_q(targets) when complete
    std::optional<ColoringWitness> lower_witness;  // good coloring at value - 1
    int deepest_complete = 0;  // largest n decided
    std::optional<RamseyFrontier> frontier;  // where an exhausted budget stopped
};

/// Least n such that every k-coloring of the 1-subspaces of F_q^n has a class
/// i with omega >= t_i.
RamseyReport ramsey_search(const RamseyQuery& query,
                           std::optional<RamseyFrontier> resume = std::nullopt);

/// Decides one dimension: a good coloring, none, or budget exhausted.
struct ColoringSearchResult {
    enum class Outcome { found, none, exhausted } outcome = Outcome::none;
    std::optional<ColoringWitness> witness;
    std::uint64_t nodes = 0;
    std::optional<RamseyFrontier> frontier;
};
ColoringSearchResult find_good_coloring(int q, int n, const std::vector<int>& targets,
                                        std::uint64_t node_budget,
                                        std::optional<RamseyFrontier> resume = std::nullopt);

struct BoseBurtonReport {
    int q = 0, n = 0, t = 0;
    long max_size = 0;        // projective points
    long formula = 0;         // (q^n - q^(n-t+1)) / (q-1)
    std::vector<PointSet> witnesses;  // all maximizers
    bool formula_ok = false;
    bool uniqueness_ok = false;
    BigInt expected_maximizers = 0;  // [n choose n-t+1]_q
};

BoseBurtonReport bose_burton(int q, int n, int t);

struct MqDecision {
    int n = 0;
    std::size_t set_size = 0;
    bool witness_exists = false;
    std::optional<PointSet> witness;
    bool exhausted = false;
    std::uint64_t nodes = 0;
};

struct MqReport {
    SearchReport search;  // value = m_q(t) when found
    std::vector<MqDecision> decisions;
};

/// Least n <= n_max with omega_arrow(A) >= t for every A of size q^(n-t+1);
/// every n is decided independently.
MqReport mq_search(int q, int t, int n_max, std::uint64_t node_budget = std::uint64_t{1} << 34);

/// R(t_1..t_k) <= R(t_1..t_{k-2}, R(t_{k-1}, t_k)) given a table of values.
struct RecurrenceCheck {
    std::vector<int> tuple;
    int value = 0;
    std::vector<int> reduced;
    int reduced_value = 0;
    bool holds = false;
};

/// Every tuple of length >= 3 whose reduced tuple is also in the table.
/// Tuples are looked up as sorted lists, since R is symmetric in its targets.
std::vector<RecurrenceCheck> check_recurrence(const std::map<std::vector<int>, int>& values);

}  // namespace afflab
