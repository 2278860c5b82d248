#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fiberprod::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitInvalid = 2,
  kExitGuard = 3,
};

/// Runs one command line (without the program name), writing reports to out
/// and diagnostics to err. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fiberprod::cli
