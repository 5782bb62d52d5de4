#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace afflab {

/// One line of the acceptance table.
struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0;
    double limit_seconds = 0;  // runtime ceiling; exceeding it fails the criterion
};

struct AcceptanceOptions {
    std::set<int> only;  // empty: all twelve
    std::uint64_t seed = 20240601;
};

inline constexpr int kCriterionCount = 12;

/// Runs the acceptance criteria in id order. on_result sees each line as it
/// finishes.
std::vector<CriterionResult> run_acceptance(
    const AcceptanceOptions& options = {},
    const std::function<void(const CriterionResult&)>& on_result = {});

std::string format_result_line(const CriterionResult& r);

}  // namespace afflab
