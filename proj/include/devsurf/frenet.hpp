#pragma once

/**
 * @file frenet.hpp
 * @brief Frenet-Serret apparatus of a parametric curve and the loci built on it:
 *        osculating circle and sphere centers, curvature axis.
 *
 * All quantities use the general-parameter formulas
 *
 *   T = a' / |a'|,   B = (a' x a'') / |a' x a''|,   N = B x T,
 *   kappa = |a' x a''| / |a'|^3,   tau = det(a', a'', a''') / |a' x a''|^2,
 *
 * evaluated on jets, so parameter derivatives of any of them are exact up to
 * the order the order-4 curve jet allows. Arc-length derivatives are the
 * parameter derivatives divided by the speed |a'|.
 */

#include <algorithm>
#include <cmath>

#include "curve.hpp"
#include "errors.hpp"
#include "jet.hpp"
#include "vec3.hpp"

namespace devsurf {

struct Tolerances {
  /// Bound on |a'| and |a' x a''|, relative to max(1, |a'|^3).
  double reg = 1e-9;
  /// Bound on |tau|.
  double tau = 1e-9;
};

struct FrenetData {
  Vector3 t_vec, n_vec, b_vec;
  double kappa = 0.0;
  double tau = 0.0;
  double kappa_s = 0.0;  // d kappa / ds
  double tau_s = 0.0;    // d tau / ds
  double speed = 0.0;    // |a'(t)|
};

struct Line3 {
  Point3 origin;
  Vector3 direction;

  Point3 at(double lambda) const { return origin + lambda * direction; }
};

/// Frame, curvature and speed, each as a jet in the curve parameter.
template <class S>
struct FrameJets {
  Vec3<S> tangent, normal, binormal;
  S kappa;
  S speed;
};

namespace detail {

/// K-th parameter derivative of a curve jet, kept to order M.
template <int K, int M, int N>
Vec3<Jet<M>> derivative_vec(const Vec3<Jet<N>>& v) {
  static_assert(K + M <= N, "curve jet order too low for the requested derivative");
  if constexpr (K == 0) {
    return {truncate<M>(v.x), truncate<M>(v.y), truncate<M>(v.z)};
  } else {
    return derivative_vec<K - 1, M>(Vec3<Jet<N - 1>>{differentiate(v.x), differentiate(v.y), differentiate(v.z)});
  }
}

inline double regularity_scale(double speed) { return std::max(1.0, speed * speed * speed); }

template <int N>
Vector3 value_vec(const Vec3<Jet<N>>& v) {
  return {v.x.value(), v.y.value(), v.z.value()};
}

inline void check_regular(double speed, double cross_norm, double t, const Tolerances& tol) {
  const double scale = regularity_scale(speed);
  if (!(speed > tol.reg * scale))
    throw SingularPoint("curve is singular (|a'| ~ 0) at t = " + std::to_string(t));
  if (!(cross_norm > tol.reg * scale))
    throw CurvatureVanishes("curvature vanishes (|a' x a''| ~ 0) at t = " + std::to_string(t));
}

inline void check_speed(double speed, double t, const Tolerances& tol) {
  if (!(speed > tol.reg * regularity_scale(speed)))
    throw SingularPoint("curve is singular (|a'| ~ 0) at t = " + std::to_string(t));
}

// Checked on plain values before any jet square root is taken.
template <int M>
void check_regular(const Vec3<Jet<M>>& d1, const Vec3<Jet<M>>& d2, double t, const Tolerances& tol) {
  const Vector3 v1 = value_vec(d1), v2 = value_vec(d2);
  check_regular(norm(v1), norm(cross(v1, v2)), t, tol);
}

template <class S>
FrameJets<S> frame_from_derivatives(const Vec3<S>& d1, const Vec3<S>& d2) {
  const Vec3<S> c = cross(d1, d2);
  const S speed = norm(d1);
  const S cn = norm(c);
  FrameJets<S> f;
  f.speed = speed;
  f.tangent = d1 / speed;
  f.binormal = c / cn;
  f.normal = cross(f.binormal, f.tangent);
  f.kappa = cn / (speed * speed * speed);
  return f;
}

}  // namespace detail

/// Frame quantities as order-M jets in the parameter (M <= 2).
template <int M>
FrameJets<Jet<M>> frame_jets(const CurveDef& c, double t, const Tolerances& tol = {}) {
  const auto a = c.jet<M + 2>(t);
  const auto d1 = detail::derivative_vec<1, M>(a);
  const auto d2 = detail::derivative_vec<2, M>(a);
  detail::check_regular(d1, d2, t, tol);
  return detail::frame_from_derivatives(d1, d2);
}

/// Unit tangent as an order-M jet (M <= 3); only needs a regular point.
template <int M>
Vec3<Jet<M>> tangent_jet(const CurveDef& c, double t, const Tolerances& tol = {}) {
  const auto d1 = detail::derivative_vec<1, M>(c.jet<M + 1>(t));
  detail::check_speed(norm(detail::value_vec(d1)), t, tol);
  return d1 / norm(d1);
}

/// Torsion as an order-M jet (M <= 1).
template <int M>
Jet<M> torsion_jet(const CurveDef& c, double t, const Tolerances& tol = {}) {
  const auto a = c.jet<M + 3>(t);
  const auto d1 = detail::derivative_vec<1, M>(a);
  const auto d2 = detail::derivative_vec<2, M>(a);
  const auto d3 = detail::derivative_vec<3, M>(a);
  detail::check_regular(d1, d2, t, tol);
  const auto cr = cross(d1, d2);
  return det(d1, d2, d3) / norm2(cr);
}

inline FrenetData frenet_apparatus(const CurveDef& c, double t, const Tolerances& tol = {}) {
  const auto a = c.jet<kJetOrder>(t);
  const auto d1 = detail::derivative_vec<1, 1>(a);
  const auto d2 = detail::derivative_vec<2, 1>(a);
  const auto d3 = detail::derivative_vec<3, 1>(a);
  detail::check_regular(d1, d2, t, tol);
  const auto cr = cross(d1, d2);

  const auto f = detail::frame_from_derivatives(d1, d2);
  const Jet<1> tau = det(d1, d2, d3) / norm2(cr);

  FrenetData out;
  out.speed = f.speed.value();
  out.t_vec = {f.tangent.x.value(), f.tangent.y.value(), f.tangent.z.value()};
  out.b_vec = {f.binormal.x.value(), f.binormal.y.value(), f.binormal.z.value()};
  out.n_vec = cross(out.b_vec, out.t_vec);
  out.kappa = f.kappa.value();
  out.tau = tau.value();
  out.kappa_s = f.kappa.derivative(1) / out.speed;
  out.tau_s = tau.derivative(1) / out.speed;
  return out;
}

/// Center of the osculating circle: a + (1/kappa) n.
inline Point3 osculating_center(const CurveDef& c, double t, const Tolerances& tol = {}) {
  const FrenetData f = frenet_apparatus(c, t, tol);
  return c.point(t) + (1.0 / f.kappa) * f.n_vec;
}

/// Center of the osculating sphere: a + (1/kappa) n - kappa_s / (kappa^2 tau) b.
inline Point3 osculating_sphere_center(const CurveDef& c, double t, const Tolerances& tol = {}) {
  const FrenetData f = frenet_apparatus(c, t, tol);
  if (!(std::abs(f.tau) > tol.tau))
    throw TorsionVanishes("torsion vanishes at t = " + std::to_string(t));
  return c.point(t) + (1.0 / f.kappa) * f.n_vec - (f.kappa_s / (f.kappa * f.kappa * f.tau)) * f.b_vec;
}

/// The curvature axis: the line through the osculating-circle center along b.
inline Line3 curvature_axis(const CurveDef& c, double t, const Tolerances& tol = {}) {
  const FrenetData f = frenet_apparatus(c, t, tol);
  return {c.point(t) + (1.0 / f.kappa) * f.n_vec, f.b_vec};
}

template <int N>
Vector3 values(const Vec3<Jet<N>>& v) {
  return {v.x.value(), v.y.value(), v.z.value()};
}

/// k-th parameter derivative (k <= N) of each component.
template <int N>
Vector3 derivatives(const Vec3<Jet<N>>& v, int k) {
  return {v.x.derivative(k), v.y.derivative(k), v.z.derivative(k)};
}

}  // namespace devsurf
