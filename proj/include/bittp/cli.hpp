#pragma once

#include <iosfwd>

namespace bittp {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitParse = 2,
    kExitConfig = 3,
    kExitInfeasible = 4,
};

/// Entry point of the `bittp` command; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace bittp
