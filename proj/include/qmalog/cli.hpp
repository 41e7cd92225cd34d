#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qmalog {

enum ExitCode : int { kExitOk = 0, kExitPropertyViolation = 1, kExitUsage = 2 };

/// Entry point of the `qmalog` tool. `args` excludes the program name.
/// Subcommands: gen, verify, attack, diagnose, sweep.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qmalog
