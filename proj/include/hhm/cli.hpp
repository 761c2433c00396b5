#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hhm {

/// Exit codes: 0 success, 1 numeric failure or failed check/suite, 2 invalid input.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Runs the command line (arguments without the program name), writing the report to
/// out and diagnostics to err. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hhm
