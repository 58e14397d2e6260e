#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace biham::cli {

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  ///< a check failed or the computation broke down
inline constexpr int kExitUsage = 2;    ///< invalid input or a degeneracy guard

/// Entry point; writes to the given streams so tests can capture output.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Comma-separated reals; throws std::invalid_argument on malformed input.
std::vector<double> parse_list(const std::string& text);

}  // namespace biham::cli
