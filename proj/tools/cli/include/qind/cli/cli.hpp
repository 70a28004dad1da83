#pragma once

#include <iosfwd>
#include <span>
#include <string>

namespace qind::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitFailure = 1,       // a model check ran and found a violation
  kExitInvalidInput = 2,  // unparseable or invalid input
  kExitDegenerate = 3,    // only one source carries the photon
  kExitUnsoundSpace = 4,  // P_ID table does not form a quasi-metric space
};

/// Runs one command line (without the program name). Reports go to `out`
/// unless --out redirects them; diagnostics go to `err`.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace qind::cli
