#pragma once

#include <iosfwd>

namespace memilp::cli {

/// Exit codes shared by every command.
enum ExitCode : int {
  kSuccess = 0,   // solution found / feasible / gap printed
  kNegative = 1,  // no solution within the limit / infeasible
  kInputError = 2,
};

/// Entry point behind the `memilp` executable; writes results to `out` and
/// diagnostics/progress to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace memilp::cli
