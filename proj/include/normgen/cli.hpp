#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace normgen {

enum ExitCode : int { kExitOk = 0, kExitVerifyFail = 1, kExitParse = 2, kExitValidation = 3, kExitHypothesis = 4 };

/// Runs the normgen command line. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace normgen
