#pragma once

#include <charconv>
#include <cstdint>
#include <string>

namespace irstool {

// Shortest round-trip decimal form, used everywhere numbers reach text so
// emitted artifacts reparse to bit-identical doubles.
inline std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

inline std::string format_u64(std::uint64_t value) {
  char buf[24];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

}  // namespace irstool
