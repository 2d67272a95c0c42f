#pragma once

#include <iosfwd>

namespace qaw::cli {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

/// qaw eval | verify | expand. Writes results to out and diagnostics to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qaw::cli
