#pragma once

#include <cstdio>
#include <string>

namespace hqmc {

/// Round-trip-exact decimal rendering of a double (17 significant digits).
inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace hqmc
