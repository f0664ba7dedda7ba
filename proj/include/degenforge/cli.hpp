#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace degenforge::cli {

/// "yes" -> 0, "no" and "error" -> 1, "input-error" -> 2.
int exit_code(const std::string& verdict);

/// Runs one command (args exclude the program name). Writes the one-line
/// summary to `out`, diagnostics to `err`, and the JSON report to --report
/// when given. Returns the exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// The report of the most recent run() on this thread, for tests.
const nlohmann::json& last_report();

}  // namespace degenforge::cli
