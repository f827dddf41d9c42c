#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace umt::cli {

/// Exit codes shared by all subcommands.
enum Exit : int { kOk = 0, kIncompatible = 1, kUsage = 2, kPrecondition = 3 };

/// Runs the `umtree` command line with `args` (excluding the program name).
/// Payload goes to `out`, diagnostics and JSON statistics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace umt::cli
