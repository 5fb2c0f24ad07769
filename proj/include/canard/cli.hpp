#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace canard {

/// Exit codes of the command-line front end.
enum ExitCode : int {
    exit_ok = 0,
    exit_internal = 1,
    exit_usage = 2,
    exit_numeric = 3,
};

/// Runs the canard_scope command line. `args` excludes the program name.
/// Results go to files under the output directory (--out, else
/// $CANARD_SCOPE_OUT, else "."); a JSON summary is printed to `out`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace canard
