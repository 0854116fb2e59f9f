#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sipmac::cli {

/// Exit statuses of the command-line tool.
enum ExitCode : int { kOk = 0, kInvalid = 1, kInfeasible = 2 };

/// Runs one command; `args` excludes the program name. Results without
/// `--out` go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int main(int argc, char** argv);

}  // namespace sipmac::cli
