#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "contighyp/errors.hpp"

namespace contighyp {

enum ExitCode : int {
  kExitSuccess = 0,
  kExitNumericFailure = 1,
  kExitInvalidInput = 2,
  kExitExhausted = 3,
};

/// Exit status for a failure of the given kind.
int exit_code_for(ErrorKind kind) noexcept;

/// Runs the contighyp command line (argv[0] is the program name) and returns
/// the exit status. Reports go to `out` (or --out), diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace contighyp
