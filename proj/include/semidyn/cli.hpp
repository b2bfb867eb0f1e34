#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace semidyn {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitFailed = 1, kExitUsage = 2, kExitNumeric = 3 };

/// Entry point behind the `semidyn` binary. `args` excludes the program name.
/// Results go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv);

}  // namespace semidyn
