#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace coopstab {

// Process exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitInput = 1,
  kExitCapacity = 2,
  kExitSuiteFailure = 3,
  kExitUsage = 64,
};

// Subcommands: gen, analyze, bounds, batch. JSON goes to `out`, diagnostics
// to `err`.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace coopstab
