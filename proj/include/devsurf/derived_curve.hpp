#pragma once

// Curves defined by formulas over a source curve (involutes, evolutes,
// recovered generating curves), evaluated with second-order jets.

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <utility>

#include "curve.hpp"
#include "frenet.hpp"
#include "interval.hpp"
#include "quadrature.hpp"

namespace devsurf {

/// Number of Simpson subintervals for arc length and integrated torsion.
inline constexpr int kArcLengthSubintervals = 1024;

class DerivedCurve {
 public:
  using Evaluator = std::function<Vec3<Jet<2>>(double)>;

  DerivedCurve(Evaluator f, Interval domain) : f_(std::move(f)), domain_(domain) {}

  Vec3<Jet<2>> jet(double s) const { return f_(s); }
  Point3 point(double s) const { return values(f_(s)); }
  /// k-th derivative, k in {0, 1, 2}.
  Vector3 derivative(double s, int k) const { return derivatives(f_(s), k); }
  const Interval& domain() const { return domain_; }

 private:
  Evaluator f_;
  Interval domain_;
};

inline constexpr Interval kWholeLine{-std::numeric_limits<double>::infinity(),
                                     std::numeric_limits<double>::infinity()};

/// Cumulative arc length of c from range.lo.
inline CumulativeIntegral arc_length(const CurveDef& c, Interval range, int n = kArcLengthSubintervals) {
  return CumulativeIntegral([&c](double t) { return norm(derivatives(c.jet<1>(t), 1)); }, range, n);
}

/// Involute b(t) = a(t) + (k - s(t)) T(t), with s the arc length from range.lo
/// and k in the same arc-length units.
inline DerivedCurve involute(const CurveDef& c, double k, Interval range, const Tolerances& tol = {}) {
  require_valid(range, "involute");
  auto s = std::make_shared<const CumulativeIntegral>(arc_length(c, range));
  return DerivedCurve(
      [c, k, s, tol](double t) {
        const auto a = detail::derivative_vec<0, 2>(c.jet<2>(t));
        const auto T = tangent_jet<2>(c, t, tol);
        const Jet<1> speed = norm(detail::derivative_vec<1, 1>(c.jet<2>(t)));
        const Jet<2> arc = integrate((*s)(t), speed);
        return a + (Jet<2>(k) - arc) * T;
      },
      range);
}

/// Evolute of c (taken as the evolved curve):
///   E = c + (1/kappa) n + (1/kappa) cot(theta) b,   theta = int tau ds + k,
/// with the torsion integral running over arc length of c from range.lo.
/// Throws DomainError where theta is a multiple of pi.
inline DerivedCurve evolute(const CurveDef& c, double k, Interval range, const Tolerances& tol = {}) {
  require_valid(range, "evolute");
  auto twist = std::make_shared<const CumulativeIntegral>(
      [&c, &tol](double t) {
        const FrenetData f = frenet_apparatus(c, t, tol);
        return f.tau * f.speed;
      },
      range, kArcLengthSubintervals);
  return DerivedCurve(
      [c, k, twist, tol](double t) {
        const auto a = detail::derivative_vec<0, 2>(c.jet<2>(t));
        const auto f = frame_jets<2>(c, t, tol);
        const Jet<1> dtheta = torsion_jet<1>(c, t, tol) * truncate<1>(f.speed);
        const Jet<2> theta = integrate((*twist)(t) + k, dtheta);
        const Jet<2> sn = sin(theta);
        if (std::abs(sn.value()) < 1e-12) throw DomainError("cot", theta.value());
        const Jet<2> radius = Jet<2>(1.0) / f.kappa;
        return a + radius * f.normal + (radius * cos(theta) / sn) * f.binormal;
      },
      range);
}

}  // namespace devsurf
