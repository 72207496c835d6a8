#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ffpm::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kFalse = 1;     // a checked property does not hold
inline constexpr int kUsage = 2;
inline constexpr int kInternal = 3;  // internal or environment failure

// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ffpm::cli
