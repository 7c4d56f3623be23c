#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace practrel {

// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumerical = 3;

// Runs one invocation. `args` excludes the program name. Results go to the
// --output file (or `out`), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace practrel
