#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace propval::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_input = 2;

/// Runs the command line `args` (without the program name), writing results to
/// `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace propval::cli
