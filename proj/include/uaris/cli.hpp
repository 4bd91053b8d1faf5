#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace uaris::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kInputError = 2,
    kContractViolation = 3,
};

/// Runs one command line (args[0] is the program name). The run report JSON
/// goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace uaris::cli
