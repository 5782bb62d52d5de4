// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
// Optional arguments restrict the run to the listed criterion ids.
#include <cstdlib>
#include <iostream>

#include "afflab/acceptance.hpp"

int main(int argc, char** argv) {
    afflab::AcceptanceOptions options;
    for (int i = 1; i < argc; ++i) options.only.insert(std::atoi(argv[i]));
    int failed = 0;
    afflab::run_acceptance(options, [&](const afflab::CriterionResult& r) {
        std::cout << afflab::format_result_line(r) << std::endl;
        if (!r.passed) ++failed;
    });
    std::cout << (failed ? "FAILED " : "ALL PASSED ") << failed << " failing" << std::endl;
    return failed ? 1 : 0;
}
