#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace firmcas {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitRuntime = 2;

/// Runs the command line `args` (without the program name). Normal output
/// goes to `out`, usage text and diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cli_main(int argc, char** argv);

}  // namespace firmcas
