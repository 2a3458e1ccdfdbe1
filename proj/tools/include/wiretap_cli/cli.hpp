#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wiretap::cli {

enum ExitCode : int {
  kOk = 0,
  kInfeasible = 1,
  kInputError = 2,
  kNumericalFailure = 3,
};

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Results go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wiretap::cli
