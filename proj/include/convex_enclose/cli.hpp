#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace convex_enclose::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInvalidInput = 2;
inline constexpr int kNumericalFailure = 3;

// Runs one command line (args excludes the program name). The JSON or CSV
// document goes to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv);

}  // namespace convex_enclose::cli
