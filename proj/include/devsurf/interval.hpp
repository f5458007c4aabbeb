#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "errors.hpp"

namespace devsurf {

/// Closed parameter interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double x, double slack = 0.0) const { return x >= lo - slack && x <= hi + slack; }

  /// i-th of n uniform samples including both ends (n >= 2).
  double sample(int i, int n) const {
    if (i == n - 1) return hi;
    return lo + length() * static_cast<double>(i) / static_cast<double>(n - 1);
  }

  bool operator==(const Interval&) const = default;
};

/// Default parameter range [0, 2 pi].
inline constexpr Interval kFullTurn{0.0, 2.0 * std::numbers::pi};

inline void require_valid(const Interval& r, const char* what) {
  if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.hi > r.lo))
    throw InvalidArgument(std::string(what) + ": interval must satisfy lo < hi");
}

}  // namespace devsurf
