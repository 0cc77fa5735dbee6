#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace diff_forge {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kOk = 0, kFailed = 1, kMalformed = 2 };

/// Runs the diff-forge command line. `args` excludes the program name. Input
/// files named "-" (or omitted) are read from `in`.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace diff_forge
