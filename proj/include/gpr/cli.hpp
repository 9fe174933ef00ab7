#pragma once

#include <iosfwd>

namespace gpr::cli {

/// Exit codes. Anything non-zero leaves no output files behind.
enum ExitCode : int {
    kOk = 0,
    kUsage = 1,       ///< bad command line
    kParse = 2,       ///< malformed input or config file
    kValidation = 3,  ///< well-formed but invalid input
    kSolver = 4,      ///< numerical failure
    kIo = 5,          ///< output could not be written
};

/// Runs the command line `argv` and returns the exit code. Normal output goes
/// to `out`, diagnostics (one line per failure) to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gpr::cli
