#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace swipt::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitNumeric = 3 };

/// Runs the tool on `args` (without the program name). Data goes to `out` unless
/// --out is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace swipt::cli
