#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tropdiff::cli {

enum ExitCode : int { Success = 0, MathFailure = 1, UsageError = 2 };

/// Runs one command line (without the program name). Exit status 0 on
/// success, 1 when the mathematics says no, 2 on usage or input errors.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tropdiff::cli
