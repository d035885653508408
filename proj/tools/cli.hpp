#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace orthojoin::cli {

/// Process exit codes.
enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kParseError = 2,
    kNotRealizable = 3,
    kInconclusive = 4,
    kBatchPartial = 5,
};

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same as above with argv[0] supplied.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace orthojoin::cli
