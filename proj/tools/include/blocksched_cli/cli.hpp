#ifndef BLOCKSCHED_CLI_CLI_HPP
#define BLOCKSCHED_CLI_CLI_HPP

#include <iosfwd>

namespace blocksched::cli {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

// Output goes to --out, else to $BLOCKSCHED_OUTPUT_DIR/<subcommand>.<ext>,
// else to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace blocksched::cli

#endif
