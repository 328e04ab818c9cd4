#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace rdcheck::detail {

/// Formats a double with 17 significant digits, the fixed width used by all
/// numeric text output so that repeated runs are byte-identical.
inline std::string format_double(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf);
}

/// True if x compares equal to a representable integer; such values print
/// without a decimal point under %.17g.
inline bool is_integral_value(double x) {
  return std::isfinite(x) && x == std::floor(x);
}

}  // namespace rdcheck::detail
