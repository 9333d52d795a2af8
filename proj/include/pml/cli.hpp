#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pml::cli {

/// Exit codes shared by every command.
enum ExitCode : int { kOk = 0, kRefuted = 1, kUnknown = 2, kInputError = 3 };

/// Runs one command. `args` excludes the program name. Results go to `out`,
/// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pml::cli
