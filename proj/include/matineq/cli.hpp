#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace matineq {

// Exit codes of verify; sweep and hunt reuse them.
inline constexpr int kExitPass = 0;
inline constexpr int kExitExpectationMismatch = 1;
inline constexpr int kExitViolated = 2;
inline constexpr int kExitHypothesisUnmet = 3;
inline constexpr int kExitError = 4;

// Entry point of the matineq tool. args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace matineq
