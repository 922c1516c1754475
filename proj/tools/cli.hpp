#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hitting::cli {

/// Exit statuses of the command-line front end.
enum ExitCode : int {
    kOk = 0,
    kInputError = 1,
    kMathError = 2,
    kVerificationFailed = 3,
};

/// Runs one invocation. `args` excludes the program name. Results go to
/// `out`, diagnostics to `err`; the return value is the exit status.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

/// Shortest decimal string that parses back to the same double.
std::string format_double(double x);

} // namespace hitting::cli
