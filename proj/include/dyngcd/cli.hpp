#ifndef DYNGCD_CLI_HPP
#define DYNGCD_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace dyngcd {

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitHypothesis = 3, kExitBudget = 4 };

/* Runs one subcommand.  `args` excludes the program name.  Results go to
 * `out` as JSON (or CSV for gcd-series --format csv); failures go to `err`
 * as a JSON object {"error", "message", "exit_code"}.
 *
 * Environment: DYNGCD_DIGIT_BUDGET overrides the default orbit digit budget;
 * DYNGCD_TEST_MODE=1 (or --test-mode) pins manifest timestamps. */
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dyngcd

#endif
