#pragma once

#include <charconv>
#include <string>

namespace sq {

// Shortest decimal string that round-trips the double. Keeps printed
// polynomials re-parseable and report files bit-stable.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace sq
