#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spider::cli {

enum ExitCode : int {
  kOk = 0,
  kRuntimeFailure = 1,
  kUsageError = 2,
  kVerificationFailure = 3,
};

/// Runs `spider <args...>`; args excludes the program name. Data goes to
/// `out` (or the --out file), diagnostics and the resolved config to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace spider::cli
