#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace thermflow {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,          // success, solution found, property holds
  kExitNegative = 1,    // no solution, property violated
  kExitUsage = 2,       // bad options, unreadable or malformed input
  kExitDiagnostic = 3,  // livelock, inconclusive search
};

/// Runs one invocation. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thermflow
