#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "interval.hpp"

namespace devsurf {

/// Running integral F(x) = int_lo^x f over a fixed range.
///
/// Each of the n subintervals is integrated with Simpson's rule (using its
/// midpoint); F at the nodes is the running sum. Between nodes F is the cubic
/// Hermite interpolant built from F and F' = f at the two ends, which keeps
/// the O(h^4) accuracy of the node values. Immutable once built.
class CumulativeIntegral {
 public:
  CumulativeIntegral(const std::function<double(double)>& f, Interval range, int n)
      : range_(range), h_(range.length() / n), F_(node_count(n)), f_(node_count(n)) {
    require_valid(range, "cumulative integral");
    f_[0] = f(range.lo);
    F_[0] = 0.0;
    for (int i = 0; i < n; ++i) {
      const double a = node(i);
      const double b = i + 1 == n ? range.hi : node(i + 1);
      const double fm = f(0.5 * (a + b));
      f_[i + 1] = f(b);
      F_[i + 1] = F_[i] + (b - a) / 6.0 * (f_[i] + 4.0 * fm + f_[i + 1]);
    }
  }

  double operator()(double x) const {
    const double slack = 1e-9 * std::max(1.0, std::abs(range_.lo) + std::abs(range_.hi));
    if (!range_.contains(x, slack)) throw InvalidArgument("evaluation outside the integration range");
    x = std::clamp(x, range_.lo, range_.hi);
    const int n = static_cast<int>(F_.size()) - 1;
    int i = std::min(n - 1, static_cast<int>((x - range_.lo) / h_));
    const double a = node(i);
    const double s = (x - a) / h_;
    if (s == 0.0) return F_[i];
    const double s2 = s * s, s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
    return h00 * F_[i] + h10 * h_ * f_[i] + h01 * F_[i + 1] + h11 * h_ * f_[i + 1];
  }

  double total() const { return F_.back(); }
  const Interval& range() const { return range_; }

 private:
  static std::size_t node_count(int n) {
    if (n < 1) throw InvalidArgument("cumulative integral needs at least one subinterval");
    return static_cast<std::size_t>(n) + 1;
  }

  double node(int i) const { return range_.lo + h_ * i; }

  Interval range_;
  double h_;
  std::vector<double> F_;
  std::vector<double> f_;
};

}  // namespace devsurf
