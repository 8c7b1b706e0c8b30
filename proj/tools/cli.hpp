#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sknet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

// Runs one command line (args[0] is the program name). Primary output goes to
// `out` unless --output is given; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sknet::cli
