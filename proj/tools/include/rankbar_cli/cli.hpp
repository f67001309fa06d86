#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace rankbar::cli {

enum ExitCode : int {
  kOk = 0,
  kBarrierViolated = 1,
  kInputError = 2,
  kResourceRefusal = 3,
  kInternalError = 4,
};

/// Runs the command line `args` (without the program name). Reports go to
/// `out`; failures are written to `err` as a JSON object.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rankbar::cli
