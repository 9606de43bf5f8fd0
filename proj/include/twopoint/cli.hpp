#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace twopoint {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitConverged = 0, kExitUsage = 1, kExitNotConverged = 2 };

/// Entry point of the `twopoint` tool. args excludes the program name.
/// Subcommands: solve, bench, trace.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twopoint
