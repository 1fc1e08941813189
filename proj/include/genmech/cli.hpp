#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace genmech::cli {

/// Exit codes: 0 success, 1 invalid input or infeasible request, 2 internal
/// inconsistency (a witness coexisting with time reversal invariance, or a
/// harness self-check failing).
enum ExitCode : int { kSuccess = 0, kInvalid = 1, kInconsistent = 2 };

/// Runs the command line tool. `args` includes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace genmech::cli
