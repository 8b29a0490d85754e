#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace tropconv {

/// Exit codes of the command-line tool.
enum ExitCode { kExitOk = 0, kExitUsage = 1, kExitParse = 2, kExitVerify = 3 };

/// Runs the tool on `args` (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tropconv
