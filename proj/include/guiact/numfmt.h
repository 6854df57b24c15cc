#pragma once

#include <charconv>
#include <cstdio>
#include <string>

namespace guiact {

// Shortest representation that round-trips through strtod.
inline std::string ShortestDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

// Fixed-point with `digits` decimals.
inline std::string FixedDouble(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace guiact
