#pragma once

/**
 * @file inverse.hpp
 * @brief Recovering a generating curve from developable data.
 *
 * Conical case: alpha'' + alpha = 0, so each coordinate is c1 sin s + c2 cos s.
 *
 * Tangent case: alpha'' + kappa^2 alpha = kappa^2 x for a given regression
 * curve x and constant kappa, solved by variation of constants:
 *
 *   alpha_i = C1 sin(ks) + C2 cos(ks)
 *           + k (sin(ks) Ic_i(s) - cos(ks) Is_i(s)),
 *   Ic_i(s) = int_{s0}^{s} cos(k r) x_i(r) dr,  Is_i(s) = int_{s0}^{s} sin(k r) x_i(r) dr,
 *
 * with s0 the start of the working range. The integrals come from cumulative
 * Simpson tables; their derivatives are the integrands themselves, so alpha'
 * and alpha'' never differentiate an interpolant.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "curve.hpp"
#include "derived_curve.hpp"
#include "errors.hpp"
#include "frenet.hpp"
#include "interval.hpp"
#include "quadrature.hpp"

namespace devsurf {

/// Simpson subintervals for the six solution integrals.
inline constexpr int kInverseSubintervals = 2048;

/// Constants in the order c11, c12, c21, c22, c31, c32.
using SolutionConstants = std::array<double, 6>;

struct InverseSolution {
  DerivedCurve alpha;
  double kappa = 0.0;
  SolutionConstants constants{};
  CurveDef source;
};

/// s -> (c11 sin s + c12 cos s, c21 sin s + c22 cos s, c31 sin s + c32 cos s).
inline DerivedCurve conical_alpha(const SolutionConstants& c) {
  return DerivedCurve(
      [c](double s) {
        const auto v = Jet<2>::variable(s);
        const Jet<2> sn = sin(v), cs = cos(v);
        return Vec3<Jet<2>>{c[0] * sn + c[1] * cs, c[2] * sn + c[3] * cs, c[4] * sn + c[5] * cs};
      },
      kWholeLine);
}

inline InverseSolution recover_alpha_tangent(const CurveDef& x, double kappa, const SolutionConstants& c,
                                             Interval range, int subintervals = kInverseSubintervals) {
  if (!std::isfinite(kappa) || !(kappa > 0.0)) throw InvalidArgument("kappa must be positive");
  require_valid(range, "inverse range");

  struct Tables {
    std::vector<CumulativeIntegral> ic, is;
  };
  auto tables = std::make_shared<Tables>();
  for (int i = 0; i < 3; ++i) {
    const Expr comp = x.components[i];
    const char name = x.parameter_name;
    tables->ic.emplace_back([&](double r) { return std::cos(kappa * r) * evaluate<double>(comp, r, name); }, range,
                            subintervals);
    tables->is.emplace_back([&](double r) { return std::sin(kappa * r) * evaluate<double>(comp, r, name); }, range,
                            subintervals);
  }

  DerivedCurve alpha(
      [x, kappa, c, tables](double s) {
        const auto ks = kappa * Jet<2>::variable(s);
        const Jet<2> sn = sin(ks), cs = cos(ks);
        const auto xj = detail::derivative_vec<0, 1>(x.jet<1>(s));
        const Jet<1> sn1 = truncate<1>(sn), cs1 = truncate<1>(cs);
        Vec3<Jet<2>> out;
        for (int i = 0; i < 3; ++i) {
          const Jet<2> Ic = integrate(tables->ic[i](s), cs1 * xj[i]);
          const Jet<2> Is = integrate(tables->is[i](s), sn1 * xj[i]);
          out[i] = c[2 * i] * sn + c[2 * i + 1] * cs + kappa * (sn * Ic - cs * Is);
        }
        return out;
      },
      range);
  return {std::move(alpha), kappa, c, x};
}

/// alpha'' + kappa^2 alpha - kappa^2 x at s.
inline Vector3 ode_residual(const DerivedCurve& alpha, const CurveDef& x, double kappa, double s) {
  const auto a = alpha.jet(s);
  const double k2 = kappa * kappa;
  return derivatives(a, 2) + k2 * values(a) - k2 * x.point(s);
}

/// RMS of |ode_residual| over n uniform samples of the working range.
inline double rms_ode_residual(const InverseSolution& sol, int n = 1000) {
  const Interval& r = sol.alpha.domain();
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += norm2(ode_residual(sol.alpha, sol.source, sol.kappa, r.sample(i, n)));
  return std::sqrt(sum / n);
}

/// True when max |tau| over 64 samples is below 1e-6: the curvature-axis
/// surface of such a curve is a cylinder.
inline bool planar_case_note(const CurveDef& c, Interval range = kFullTurn, const Tolerances& tol = {}) {
  double worst = 0.0;
  for (int i = 0; i < 64; ++i) worst = std::max(worst, std::abs(frenet_apparatus(c, range.sample(i, 64), tol).tau));
  return worst < 1e-6;
}

// ---------------------------------------------------------------------------
// Diagnostics

struct AlignmentSample {
  double s = 0.0;
  double angle = 0.0;     // between b_alpha(s) and the unit tangent of x
  double distance = 0.0;  // from alpha's osculating center to the tangent line of x
  double kappa = 0.0;     // measured curvature of alpha
  double tau = 0.0;       // measured torsion of alpha
};

struct AlignmentReport {
  std::vector<AlignmentSample> samples;
  int skipped = 0;  // samples where alpha or x is not regular
};

/// Compares the curvature axes of alpha with the rulings x + lambda x' of the
/// tangent developable of x. Torsion of alpha uses a central difference of
/// alpha'' with h = 1e-5; everything else comes from jets.
inline AlignmentReport alignment_diagnostics(const InverseSolution& sol, int n = 64) {
  AlignmentReport rep;
  const Interval& r = sol.alpha.domain();
  const double h = 1e-5;
  for (int i = 0; i < n; ++i) {
    const double s = r.sample(i, n);
    const auto a = sol.alpha.jet(s);
    const Vector3 d1 = derivatives(a, 1), d2 = derivatives(a, 2);
    const Vector3 cr = cross(d1, d2);
    const double speed = norm(d1), crn = norm(cr);
    const auto xj = sol.source.jet<1>(s);
    const Vector3 xd = derivatives(xj, 1);
    const double scale = detail::regularity_scale(speed);
    if (!(speed > 1e-9 * scale) || !(crn > 1e-9 * scale) || !(norm(xd) > 1e-12)) {
      ++rep.skipped;
      continue;
    }
    const double sp = std::min(s + h, r.hi), sm = std::max(s - h, r.lo);
    const Vector3 d3 = (sol.alpha.derivative(sp, 2) - sol.alpha.derivative(sm, 2)) / (sp - sm);

    const Vector3 b = cr / crn;
    const Vector3 tx = xd / norm(xd);
    const Vector3 n_vec = cross(b, d1 / speed);
    const double kappa = crn / (speed * speed * speed);
    const Point3 center = values(a) + (1.0 / kappa) * n_vec;
    const Vector3 w = center - values(xj);

    AlignmentSample smp;
    smp.s = s;
    smp.angle = std::atan2(norm(cross(b, tx)), std::abs(dot(b, tx)));
    smp.distance = norm(w - dot(w, tx) * tx);
    smp.kappa = kappa;
    smp.tau = det(d1, d2, d3) / (crn * crn);
    rep.samples.push_back(smp);
  }
  return rep;
}

}  // namespace devsurf
