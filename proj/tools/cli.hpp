#pragma once

#include <iosfwd>

namespace scope::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kInputError = 2,
  kDomainError = 3,
  kNonConvergence = 4,
};

/// Runs the tool with the given arguments. Reports go to `out` unless -o is
/// given; diagnostics go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace scope::cli
