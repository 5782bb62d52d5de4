#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "afflab/json_io.hpp"

namespace afflab::cli {

enum ExitCode { ok = 0, usage = 2, violation = 3, budget = 4, internal = 5 };

/// Runs one command line (args excludes the program name). The result
/// document goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

std::string sha256_hex(const std::string& data);

/// Bound tables: {"id", "columns": [...], "rows": [[cell, ...], ...]} with
/// string cells, and the equivalent CSV with a header line.
std::string table_to_csv(const Json& table);
Json table_from_csv(const std::string& id, const std::string& csv);

}  // namespace afflab::cli
