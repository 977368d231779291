#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace disc {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,   ///< bad flags, unreadable or malformed input
  kExitBudget = 3,  ///< the requested computation is over budget
  kExitNumeric = 4, ///< numeric failure or failed self-test
};

/// Runs one command line (without the program name). Reports go to `out`,
/// diagnostics to `err`; "-" as an input path reads `in`.
int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace disc
