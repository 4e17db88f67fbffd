#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace revisekit::cli {

enum Exit : int {
    kOk = 0,
    kFailure = 1, // usage errors, unreadable files, suite violations
    kParseError = 2,
    kInvariant = 3,
    kInvalidExplanation = 4,
    kCapExceeded = 5,
};

/// Runs the command line `args` (without the program name). The environment
/// variable REVISEKIT_MAX_GROUND is read here unless --max-ground is given.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

} // namespace revisekit::cli
