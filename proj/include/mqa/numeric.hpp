#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace mqa {

// Canonical 2-decimal rendering, half away from zero; never "-0.00".
inline std::string format_meters(double v) {
  long long n = std::llround(v * 100.0);
  long long a = n < 0 ? -n : n;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%s%lld.%02lld", (n < 0 && a != 0) ? "-" : "", a / 100, a % 100);
  return buf;
}

// The double the canonical rendering denotes; numeric comparisons against
// ground truth go through this so they agree with the rendered text.
inline double round2(double v) {
  return static_cast<double>(std::llround(v * 100.0)) / 100.0;
}

}  // namespace mqa
