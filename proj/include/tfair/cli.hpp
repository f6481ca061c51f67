#ifndef TFAIR_CLI_HPP
#define TFAIR_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace tfair::cli {

// Exit codes of the command-line front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitCapacity = 3;

/// Runs `tfair <args...>` (args exclude the program name), writing tables to
/// `out` and diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tfair::cli

#endif  // TFAIR_CLI_HPP
