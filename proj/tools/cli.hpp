#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hwm::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_numeric = 2;
inline constexpr int exit_io = 3;

/// Runs the command line `args` (args[0] is the program name) and returns the
/// process exit code. Data goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace hwm::cli
