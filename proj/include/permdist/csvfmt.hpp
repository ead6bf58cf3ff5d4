#pragma once

#include <charconv>
#include <string>

namespace permdist {

/// Shortest decimal representation that round-trips the double exactly.
/// Locale independent, so CSV output is byte-deterministic.
inline std::string fmt_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace permdist
