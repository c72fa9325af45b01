#pragma once

#include <iosfwd>

namespace livelab::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kViolated = 1;  // property violated or counterexample found
inline constexpr int kUsage = 2;
inline constexpr int kBudget = 3;    // budget exceeded or schedule not realizable

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

} // namespace livelab::cli
