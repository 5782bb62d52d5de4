#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "afflab/point_set.hpp"

namespace afflab {

enum class SearchStatus { complete, incomplete, greater_than, unknown };
std::string to_string(SearchStatus s);

/// Outcome of an exhaustive or branch-and-bound search.
struct SearchReport {
    SearchStatus status = SearchStatus::complete;
    std::optional<long> value;
    std::optional<PointSet> witness;
    std::uint64_t nodes = 0;
    std::uint64_t seed = 0;
    double wall_seconds = 0;
};

}  // namespace afflab
