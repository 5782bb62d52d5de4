#pragma once

#include <optional>
#include <vector>

#include "afflab/config.hpp"
#include "afflab/search_report.hpp"
#include "afflab/subspace.hpp"

namespace afflab {

struct ExtremalQuery {
    enum class Mode { exact, lower_only, decision };

    int q = 3;
    int n = 1;
    std::vector<AffineConfiguration> family;
    Mode mode = Mode::exact;
    long target = 0;  // decision mode: is there a free set of this size?
    std::uint64_t node_budget = std::uint64_t{1} << 40;
    std::uint64_t seed = 0;
    /// Restrict to canonical representatives under translations and
    /// monomial maps. Disabling gives the plain search used for cross-checks.
    bool symmetry = true;
};

/// ex_aff(n, family).
///
/// Exact mode returns the maximum with the first witness in canonical DFS
/// order. Decision mode returns value = target and a witness when a free set
/// of that size exists, otherwise value = nullopt with status complete.
SearchReport ex_aff(const ExtremalQuery& query);

/// Whether a is free of every member of the family.
bool is_family_free(const std::vector<AffineConfiguration>& family, const PointSet& a);

struct BoundCheckReport {
    int q = 0, t = 0, n = 0;
    long exact = 0;
    long double eq1_rhs = 0;
    long double thm42_rhs = 0;
    bool eq1_applicable = true;  // the explicit bound needs n >= t
    bool below_eq1 = false;
    bool below_thm42 = false;
    long double eq1_slack = 0;
    long double thm42_slack = 0;
};

/// Compares an exact ex_aff(n, F_q^t) against the two closed-form upper bounds.
BoundCheckReport check_bound_formulas(int q, int t, int n, long exact, const Rational& sigma);

struct ExtractionResult {
    std::vector<Index> u;  // linearly independent directions
    Index j = 0;           // coset of W_u, encoded by coefficients on u
    Subspace complement_space;
    PointSet extracted;    // inside F_q^(n-r+1), in W_u coordinates
    std::size_t s_size = 0;
    BigInt nondegenerate = 0;
};

/// Pigeonhole extraction: the (u, j) class with the most non-degenerate
/// homomorphisms, re-expressed inside the complement of span(u).
ExtractionResult extract_subconfig(const AffineConfiguration& b, const PointSet& a,
                                   const BigInt& budget = BigInt(1) << 30);

/// Full search over all 2^(q^n) subsets; for cross-checking small cases.
long ex_aff_brute_force(const std::vector<AffineConfiguration>& family, int q, int n);

}  // namespace afflab
