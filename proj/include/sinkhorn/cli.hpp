#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sinkhorn::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kOk = 0,
    kFailure = 1,        // unexpected internal error
    kInputError = 2,     // unparsable input or violated input constraint
    kNotConverged = 3,   // step budget exhausted (a report is still emitted)
    kPrecondition = 4,   // e.g. non-symmetric matrix where symmetry is required
    kResourceCap = 5,    // symbolic expression exceeded its degree cap
};

/// Runs one command line (excluding argv[0]); the JSON report goes to `out`,
/// diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace sinkhorn::cli
