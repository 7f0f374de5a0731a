#pragma once

#include <algorithm>
#include <cmath>

namespace maxspec::testing {

inline bool rel_close(double x, double y, double tol) {
  if (x == y) return true;
  return std::abs(x - y) <= tol * std::max(std::abs(x), std::abs(y));
}

}  // namespace maxspec::testing
