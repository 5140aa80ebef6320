#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rfree::cli {

/// Exit codes: 0 all checks passed, 1 a check failed (mismatch, non-negative witness),
/// 2 usage error, 3 resource limit, 4 internal invariant violation, 5 I/O failure.
enum ExitCode : int { ok = 0, check_failed = 1, usage = 2, resource = 3, invariant = 4, io = 5 };

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::istream& in);

}  // namespace rfree::cli
