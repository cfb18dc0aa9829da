#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gddtool {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kVerificationFailure = 2,
  kNegative = 3,       // NotExists, NecessaryFail, Exhausted
  kUndecided = 4,      // OpenException, Timeout
  kMissingIngredient = 5,
};

// Runs one gddtool command line (without the program name).
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gddtool
