#ifndef SEGCERT_TOOLS_COMMANDS_H_
#define SEGCERT_TOOLS_COMMANDS_H_

#include <ostream>
#include <string>
#include <vector>

namespace segcert::cli {

// Process exit codes.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,     // bad flags or configuration values
  kExitData = 2,      // unreadable, malformed or inconsistent input data
  kExitInternal = 3,  // internal invariant violation
};

// Runs the command line `args` (without the program name), writing regular
// output to `out` and diagnostics to `err`. Subcommands: certify, toy,
// kfwer, metrics.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace segcert::cli

#endif  // SEGCERT_TOOLS_COMMANDS_H_
