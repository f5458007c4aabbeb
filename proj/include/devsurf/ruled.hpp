#pragma once

/**
 * @file ruled.hpp
 * @brief Ruled surfaces R(u, lambda) = x(u) + lambda y(u) with |y| = 1.
 *
 * Base and director are carried as second-order jets in u, so R_u, R_uu and
 * R_u-lambda are exact whenever the source is a parsed curve. Custom surfaces
 * built from plain point functions fall back to central differences.
 *
 * The curvature-axis surface of a curve a is
 *
 *   R(u, lambda) = a(u) + (1/kappa(u)) n(u) + lambda b(u),
 *
 * and its rulings are singular exactly at lambda* = -kappa_s / (kappa^2 tau),
 * the osculating sphere center.
 */

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "curve.hpp"
#include "errors.hpp"
#include "frenet.hpp"
#include "interval.hpp"
#include "jet.hpp"
#include "vec3.hpp"

namespace devsurf {

enum class SurfaceKind { CurvatureAxis, TangentDev, Cylinder, Cone, Custom };

inline const char* kind_name(SurfaceKind k) {
  switch (k) {
    case SurfaceKind::CurvatureAxis: return "curvature-axis";
    case SurfaceKind::TangentDev: return "tangent-dev";
    case SurfaceKind::Cylinder: return "cylinder";
    case SurfaceKind::Cone: return "cone";
    case SurfaceKind::Custom: return "custom";
  }
  return "?";
}

class RuledSurface {
 public:
  using VecJet = Vec3<Jet<2>>;
  using Field = std::function<VecJet(double)>;

  RuledSurface(Field base, Field director, SurfaceKind kind, Interval domain)
      : base_(std::move(base)), director_(std::move(director)), kind_(kind), domain_(domain) {}

  VecJet base(double u) const { return base_(u); }
  /// Unit director and its first two u-derivatives.
  VecJet director(double u) const { return director_(u); }
  SurfaceKind kind() const { return kind_; }
  const Interval& u_domain() const { return domain_; }

 private:
  Field base_;
  Field director_;
  SurfaceKind kind_;
  Interval domain_;
};

namespace detail {

inline Vec3<Jet<2>> constant_field(const Vector3& v) { return {Jet<2>(v.x), Jet<2>(v.y), Jet<2>(v.z)}; }

inline Vec3<Jet<2>> from_derivatives(const Vector3& v, const Vector3& d1, const Vector3& d2) {
  return {Jet<2>::from_derivatives({v.x, d1.x, d2.x}), Jet<2>::from_derivatives({v.y, d1.y, d2.y}),
          Jet<2>::from_derivatives({v.z, d1.z, d2.z})};
}

/// Central-difference jet of a point function: h1 = 1e-6 s for the first
/// derivative, h2 = 1e-4 s for the second, s = max(1, |u|).
inline Vec3<Jet<2>> difference_jet(const std::function<Vector3(double)>& f, double u) {
  const double s = std::max(1.0, std::abs(u));
  const double h1 = 1e-6 * s, h2 = 1e-4 * s;
  const Vector3 v = f(u);
  const Vector3 d1 = (f(u + h1) - f(u - h1)) / (2 * h1);
  const Vector3 d2 = (f(u + h2) - 2.0 * v + f(u - h2)) / (h2 * h2);
  return from_derivatives(v, d1, d2);
}

}  // namespace detail

/// R(s, lambda) = a + (1/kappa) n + lambda b.
inline RuledSurface curvature_axis_surface(const CurveDef& c, Interval domain = kFullTurn, Tolerances tol = {}) {
  auto frame = [c, tol](double u) { return frame_jets<2>(c, u, tol); };
  return RuledSurface(
      [c, frame](double u) {
        const auto f = frame(u);
        return detail::derivative_vec<0, 2>(c.jet<2>(u)) + (Jet<2>(1.0) / f.kappa) * f.normal;
      },
      [frame](double u) { return frame(u).binormal; }, SurfaceKind::CurvatureAxis, domain);
}

/// R(s, lambda) = a(s) + lambda a'(s)/|a'(s)|.
inline RuledSurface tangent_developable(const CurveDef& c, Interval domain = kFullTurn, Tolerances tol = {}) {
  return RuledSurface([c](double u) { return detail::derivative_vec<0, 2>(c.jet<2>(u)); },
                      [c, tol](double u) { return tangent_jet<2>(c, u, tol); }, SurfaceKind::TangentDev, domain);
}

/// R(s, lambda) = a(s) + lambda e/|e|.
inline RuledSurface generalized_cylinder(const CurveDef& c, const Vector3& e, Interval domain = kFullTurn) {
  if (!(norm(e) > 1e-300)) throw ZeroVector("cylinder direction must be nonzero");
  const Vector3 y = normalized(e);
  return RuledSurface([c](double u) { return detail::derivative_vec<0, 2>(c.jet<2>(u)); },
                      [y](double) { return detail::constant_field(y); }, SurfaceKind::Cylinder, domain);
}

/// R(s, lambda) = apex + lambda d(s)/|d(s)|.
inline RuledSurface cone_surface(const Point3& apex, const CurveDef& dir_curve, Interval domain = kFullTurn) {
  return RuledSurface([apex](double) { return detail::constant_field(apex); },
                      [dir_curve](double u) {
                        const auto d = detail::derivative_vec<0, 2>(dir_curve.jet<2>(u));
                        if (!(norm(detail::value_vec(d)) > 1e-300))
                          throw ZeroVector("cone direction curve vanishes at u = " + std::to_string(u));
                        return normalized(d);
                      },
                      SurfaceKind::Cone, domain);
}

/// Ruled surface from plain point functions; the director is normalized
/// pointwise and u-derivatives come from central differences.
inline RuledSurface custom_ruled_surface(std::function<Vector3(double)> base, std::function<Vector3(double)> director,
                                         Interval domain) {
  auto unit = [director = std::move(director)](double u) {
    const Vector3 y = director(u);
    if (!(norm(y) > 1e-300)) throw ZeroVector("director vanishes at u = " + std::to_string(u));
    return normalized(y);
  };
  return RuledSurface([base = std::move(base)](double u) { return detail::difference_jet(base, u); },
                      [unit](double u) { return detail::difference_jet(unit, u); }, SurfaceKind::Custom, domain);
}

inline Point3 eval_surface(const RuledSurface& S, double u, double lambda) {
  return detail::value_vec(S.base(u)) + lambda * detail::value_vec(S.director(u));
}

/// det(x'(u), y(u), y'(u)); zero exactly where the surface is developable.
inline double developability_residual(const RuledSurface& S, double u) {
  const auto x = S.base(u);
  const auto y = S.director(u);
  return det(derivatives(x, 1), detail::value_vec(y), derivatives(y, 1));
}

// ---------------------------------------------------------------------------
// Gaussian curvature

struct SurfaceDerivatives {
  Vector3 su, sv, suu, suv, svv;
};

/// K = (LN - M^2) / (EG - F^2). Throws SurfaceSingularPoint where |Su x Sv| is
/// below reg * max(1, |Su| |Sv|).
inline double gaussian_curvature(const SurfaceDerivatives& d, double reg = 1e-9) {
  const Vector3 nrm = cross(d.su, d.sv);
  const double area = norm(nrm);
  if (!(area > reg * std::max(1.0, norm(d.su) * norm(d.sv))))
    throw SurfaceSingularPoint("surface normal vanishes");
  const Vector3 n = nrm / area;
  const double E = dot(d.su, d.su), F = dot(d.su, d.sv), G = dot(d.sv, d.sv);
  const double L = dot(d.suu, n), M = dot(d.suv, n), N = dot(d.svv, n);
  return (L * N - M * M) / (E * G - F * F);
}

inline SurfaceDerivatives ruled_derivatives(const RuledSurface& S, double u, double lambda) {
  const auto x = S.base(u);
  const auto y = S.director(u);
  SurfaceDerivatives d;
  d.su = derivatives(x, 1) + lambda * derivatives(y, 1);
  d.sv = detail::value_vec(y);
  d.suu = derivatives(x, 2) + lambda * derivatives(y, 2);
  d.suv = derivatives(y, 1);
  d.svv = {0, 0, 0};
  return d;
}

inline double gaussian_curvature(const RuledSurface& S, double u, double lambda, double reg = 1e-9) {
  return gaussian_curvature(ruled_derivatives(S, u, lambda), reg);
}

/// Central-difference derivatives of a general patch f(u, v), h = 1e-4.
inline SurfaceDerivatives patch_derivatives(const std::function<Point3(double, double)>& f, double u, double v,
                                            double h = 1e-4) {
  SurfaceDerivatives d;
  const Point3 c = f(u, v);
  d.su = (f(u + h, v) - f(u - h, v)) / (2 * h);
  d.sv = (f(u, v + h) - f(u, v - h)) / (2 * h);
  d.suu = (f(u + h, v) - 2.0 * c + f(u - h, v)) / (h * h);
  d.svv = (f(u, v + h) - 2.0 * c + f(u, v - h)) / (h * h);
  d.suv = (f(u + h, v + h) - f(u + h, v - h) - f(u - h, v + h) + f(u - h, v - h)) / (4 * h * h);
  return d;
}

// ---------------------------------------------------------------------------
// Striction curve and edge of regression

/// sigma(u) = x - (<x', y'> / <y', y'>) y, as a first-order jet.
inline Vec3<Jet<1>> striction_jet(const RuledSurface& S, double u) {
  const auto x = S.base(u);
  const auto y = S.director(u);
  const Vector3 yd = derivatives(y, 1);
  if (!(norm(yd) > 1e-9 * std::max(1.0, norm(derivatives(x, 1)))))
    throw CylindricalRuling("director is stationary at u = " + std::to_string(u));
  const auto dx = detail::derivative_vec<1, 1>(x);
  const auto dy = detail::derivative_vec<1, 1>(y);
  const auto x1 = detail::derivative_vec<0, 1>(x);
  const auto y1 = detail::derivative_vec<0, 1>(y);
  return x1 - (dot(dx, dy) / dot(dy, dy)) * y1;
}

inline Point3 striction_curve(const RuledSurface& S, double u) { return detail::value_vec(striction_jet(S, u)); }

struct RegressionPoint {
  double lambda_star;
  Point3 point;
};

/// lambda* = -kappa_s / (kappa^2 tau) on the curvature-axis surface of c.
inline RegressionPoint regression_edge(const CurveDef& c, double u, const Tolerances& tol = {}) {
  const FrenetData f = frenet_apparatus(c, u, tol);
  if (!(std::abs(f.tau) > tol.tau)) throw TorsionVanishes("torsion vanishes at t = " + std::to_string(u));
  const double lambda_star = -f.kappa_s / (f.kappa * f.kappa * f.tau);
  return {lambda_star, eval_surface(curvature_axis_surface(c, {u, u}, tol), u, lambda_star)};
}

}  // namespace devsurf
