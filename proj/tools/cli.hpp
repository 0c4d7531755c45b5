#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace espo::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitUsage = 64;

// Runs one subcommand. args excludes the program name. The report goes to
// --out when given, otherwise to out; diagnostics go to err.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace espo::cli
