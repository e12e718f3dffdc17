#pragma once

#include <ostream>

namespace wstar {

/// Exit codes of the command-line tool.
enum ExitCode : int { kPass = 0, kVerificationFailure = 1, kInputError = 2 };

/// Subcommands: diagonalize, verify, example8, prop4, spectrum.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wstar
