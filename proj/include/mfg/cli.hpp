#ifndef MFG_CLI_HPP
#define MFG_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace mfg::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNotMet = 1;     // criterion not met / numeric failure
inline constexpr int kExitInput = 2;      // bad arguments, schema or I/O
inline constexpr int kExitCap = 3;        // enumeration cap exceeded
inline constexpr int kExitEmpty = 4;      // empty result set

// Runs one command (args exclude the program name); human-readable output
// goes to `out`, diagnostics to `err`. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err);

}  // namespace mfg::cli

#endif  // MFG_CLI_HPP
