#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace conlog {

/// Index of a sort in a signature. The two-sorted setting uses s1 (objects)
/// and s2 (attributes); generic signatures may declare more.
struct Sort {
  std::uint8_t index = 0;

  constexpr auto operator<=>(const Sort&) const = default;
};

inline constexpr Sort kObjects{0};
inline constexpr Sort kAttributes{1};

/// "s1", "s2", ... as used in diagnostics for the built-in two-sorted setting.
inline std::string default_sort_name(Sort s) { return "s" + std::to_string(s.index + 1); }

}  // namespace conlog
