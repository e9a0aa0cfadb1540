#ifndef POMPEIU_CLI_COMMANDS_HPP
#define POMPEIU_CLI_COMMANDS_HPP

#include <string>
#include <vector>

namespace pompeiu::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kInputError = 2,
  kPropertyFails = 10,
  kNotApplicable = 11,
  kQuadratureBudget = 12,
};

struct CommandResult {
  int exit_code = kOk;
  std::string output;  ///< report body (stdout unless --out was given)
  std::string error;   ///< diagnostics for stderr
};

/// Runs one invocation; `args` excludes the program name. Files named by
/// --out are written here, in which case `output` is left empty.
CommandResult run(const std::vector<std::string>& args);

}  // namespace pompeiu::cli

#endif  // POMPEIU_CLI_COMMANDS_HPP
