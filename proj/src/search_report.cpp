#include "afflab/search_report.hpp"

namespace afflab {

std::string to_string(SearchStatus s) {
    switch (s) {
        case SearchStatus::complete: return "complete";
        case SearchStatus::incomplete: return "incomplete";
        case SearchStatus::greater_than: return "greater_than";
        case SearchStatus::unknown: return "unknown";
    }
    return "unknown";
}

}  // namespace afflab
