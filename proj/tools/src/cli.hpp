#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace curvnf::cli {

enum ExitCode : int { kOk = 0, kAnalysisFailure = 1, kUsage = 2 };

/// Runs the command line `args` (without the program name). Reports go to
/// `out` unless -o is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace curvnf::cli
