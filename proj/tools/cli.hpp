#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cactus::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFailure = 1;  // unexpected error (I/O, internal)
inline constexpr int kUsage = 2;
inline constexpr int kParse = 3;
inline constexpr int kNonConvergence = 4;
inline constexpr int kBudget = 5;

// Runs one invocation. args excludes the program name. Human summary goes
// to `out`, diagnostics to `err`; data goes to files.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cactus::cli
