#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace iterindex::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitMismatch = 1,  // verification mismatch, exclusion, failed bound
    kExitSchema = 2,    // malformed input or invalid parameters
    kExitOracle = 3,    // numeric oracle or periodic fit failure
};

/// Runs the tool on `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace iterindex::cli
