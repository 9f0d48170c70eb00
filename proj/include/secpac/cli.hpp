#pragma once

#include <string>
#include <vector>

namespace secpac::cli {

// Parses and runs one subcommand (threshold, plan, halting, qber, simulate,
// decide). Returns the process exit code:
//   0  success; for simulate/decide, the design was accepted
//   2  the decision gates rejected the design
//   3  infeasible design (worst-case halt probability exceeds delta_star)
//   4  input error (bad flags, bad config file, domain violations)
//   5  runtime error (I/O failures and other unexpected conditions)
int run_cli(int argc, const char* const* argv);

// Same, for callers that already hold the arguments (program name excluded).
int run_cli(const std::vector<std::string>& args);

}  // namespace secpac::cli
