#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace steiner {

// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,
  kExitVerifyFailed = 1,
  kExitUsage = 2,
  kExitBadInput = 3,  // parse or validation error
  kExitOracleRefused = 4,
  kExitTimeout = 5,
};

/// Runs the tool on `args` (without the program name). A file argument of
/// "-" or a missing file argument reads from `in`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace steiner
