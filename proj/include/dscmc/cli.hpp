#pragma once

// Command-line front end. Exit codes:
//   0 ok, 1 verify found a failing check, 2 bad flags or domain error,
//   3 integration failure, 4 not admissible, 5 verification failed,
//   6 resonant exponent, 7 eigenvalue mismatch, 8 I/O.

#include <iosfwd>

namespace dscmc {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
  kExitIntegration = 3,
  kExitNotAdmissible = 4,
  kExitVerification = 5,
  kExitResonant = 6,
  kExitEigenMismatch = 7,
  kExitIo = 8,
};

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dscmc
