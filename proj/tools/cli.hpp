#pragma once

#include <iosfwd>

namespace pscat::cli {

enum ExitCode : int { kPass = 0, kVerificationFailure = 1, kUsageError = 2 };

// Runs one subcommand. Reports go to out (or to --out), diagnostics to err.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pscat::cli
