#pragma once

#include <iosfwd>

namespace heatctl::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kParse = 2,
  kPrecondition = 3,
  kNumerics = 4,
  kRegression = 5,
};

/// Parses argv, runs one verb and maps library exceptions onto exit codes.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace heatctl::cli
