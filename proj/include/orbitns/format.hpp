#pragma once

#include <charconv>
#include <string>

namespace orbitns {

/// Shortest round-trip decimal form of x.
inline std::string format_double(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

}  // namespace orbitns
