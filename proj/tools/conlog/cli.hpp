#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace conlog::cli {

/// Exit codes of the tool.
inline constexpr int kOk = 0;
inline constexpr int kPropertyFails = 1;
inline constexpr int kUsage = 2;
inline constexpr int kBudget = 3;

/// Runs one invocation; `args` excludes the program name. Results go to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace conlog::cli
