#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace abnet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitTolerance = 1;
inline constexpr int kExitInput = 2;

/// Runs one command line (without the program name). Results go to the
/// configured output path, or to `out` when no path is set; diagnostics and
/// summaries go to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace abnet::cli
