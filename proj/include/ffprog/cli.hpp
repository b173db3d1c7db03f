#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ffprog::cli {

// Exit codes.
inline constexpr int kTrue = 0;
inline constexpr int kFalse = 1;
inline constexpr int kUsage = 2;

/// Runs one command line; reports go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace ffprog::cli
