#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace zagreb {

/// Exit codes of the command-line front end.
enum ExitCode : int {
  kExitOk = 0,
  kExitGateFailure = 1,
  kExitUsage = 2,
  kExitRuntime = 3,
};

/// Runs one command. `args` excludes the program name. Reports go to `out`
/// unless -o names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int parse_and_dispatch(int argc, char** argv);

}  // namespace zagreb
