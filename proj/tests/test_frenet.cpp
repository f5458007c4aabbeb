#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "devsurf/derived_curve.hpp"
#include "devsurf/frenet.hpp"
#include "support/curves.hpp"

using namespace devsurf;
using std::numbers::pi;

namespace {

const CurveDef& helix() {
  static const CurveDef c = parse_curve("(cos(t), sin(t), t)");
  return c;
}
const CurveDef& circle() {
  static const CurveDef c = parse_curve("(cos(t), sin(t), 0)");
  return c;
}

void expect_vec_near(const Vector3& a, const Vector3& b, double tol) {
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
  EXPECT_NEAR(a.z, b.z, tol);
}

double distance_to_line(const Point3& p, const Line3& l) {
  const Vector3 d = p - l.origin;
  return norm(d - dot(d, l.direction) * l.direction);
}

}  // namespace

TEST(Frenet, HelixCurvatureAndTorsion) {
  for (double t : {-2.0, 0.0, 0.3, 1.0, 5.5}) {
    const FrenetData f = frenet_apparatus(helix(), t);
    EXPECT_NEAR(f.kappa, 0.5, 1e-14);
    EXPECT_NEAR(f.tau, 0.5, 1e-14);
    EXPECT_NEAR(f.kappa_s, 0.0, 1e-14);
    EXPECT_NEAR(f.tau_s, 0.0, 1e-14);
    EXPECT_NEAR(f.speed, std::sqrt(2.0), 1e-15);
  }
}

TEST(Frenet, UnitCircle) {
  const FrenetData f = frenet_apparatus(circle(), 0.7);
  EXPECT_NEAR(f.kappa, 1.0, 1e-15);
  EXPECT_EQ(f.tau, 0.0);
  expect_vec_near(f.b_vec, {0, 0, 1}, 1e-15);
}

TEST(Frenet, SingularAndFlatPoints) {
  EXPECT_THROW(frenet_apparatus(parse_curve("(t^2, t^3, t^4)"), 0.0), SingularPoint);
  EXPECT_THROW(frenet_apparatus(parse_curve("(t, 2*t, 0)"), 0.4), CurvatureVanishes);
  EXPECT_THROW(frenet_apparatus(parse_curve("(t, t^3, 0)"), 0.0), CurvatureVanishes);
}

TEST(Frenet, OsculatingCenter) {
  expect_vec_near(osculating_center(circle(), 1.3), {0, 0, 0}, 1e-15);
  expect_vec_near(osculating_center(helix(), 0.0), {-1, 0, 0}, 1e-15);
  expect_vec_near(osculating_center(parse_curve("(2*cos(t), 2*sin(t), 0)"), 2.1), {0, 0, 0}, 1e-14);
}

TEST(Frenet, OsculatingSphereCenter) {
  for (double t : {0.0, 1.0, 2.5}) expect_vec_near(osculating_sphere_center(helix(), t), osculating_center(helix(), t), 1e-14);
  EXPECT_THROW(osculating_sphere_center(circle(), 0.2), TorsionVanishes);

  // Against the third-order contact conditions, solved independently.
  const CurveDef cubic = parse_curve("(t, t^2, t^3)");
  for (double t : {-0.8, 0.0, 0.5, 1.2}) {
    const Point3 m = osculating_sphere_center(cubic, t);
    const Point3 oracle = oracle::contact_sphere_center(cubic, t);
    EXPECT_LT(distance(m, oracle), 1e-9 * std::max(1.0, norm(oracle))) << t;
  }
}

TEST(Frenet, SphericalCurveHasFixedOsculatingSphere) {
  // The spherical nephroid lies on the unit sphere.
  const CurveDef neph = parse_curve("(3/4*cos(t) - 1/4*cos(3*t), 3/4*sin(t) - 1/4*sin(3*t), sqrt(3)/2*cos(t))");
  for (double t : {0.4, 1.0, 2.0, 2.7}) {
    EXPECT_NEAR(norm(neph.point(t)), 1.0, 1e-15);
    EXPECT_LT(norm(osculating_sphere_center(neph, t)), 1e-12) << t;
  }
}

TEST(Frenet, CurvatureAxis) {
  const Line3 a = curvature_axis(circle(), 0.9);
  expect_vec_near(a.origin, {0, 0, 0}, 1e-15);
  expect_vec_near(a.direction, {0, 0, 1}, 1e-15);

  const Line3 h = curvature_axis(helix(), 0.0);
  expect_vec_near(h.origin, {-1, 0, 0}, 1e-15);
  expect_vec_near(h.direction, {0, -1 / std::sqrt(2.0), 1 / std::sqrt(2.0)}, 1e-15);
}

TEST(Frenet, AsteroidCurvatureAxisMatchesClosedForm) {
  // Ruling of the closed-form asteroid surface at t = pi/4: two points of the line.
  const double t = pi / 4;
  const CurveDef ast = parse_curve("(cos(t)^3, sin(t)^3, cos(2*t))");
  auto closed = [t](double lambda) {
    const double c = std::cos(t), s = std::sin(t);
    return Point3{-c * (110 * c * c - 12 * lambda - 125) / 15, s * (110 * c * c - 12 * lambda + 15) / 15,
                  std::cos(2 * t) - 3 * lambda / 5};
  };
  const Line3 axis = curvature_axis(ast, t);
  const Vector3 dir = normalized(closed(1.0) - closed(0.0));
  EXPECT_LT(norm(cross(dir, axis.direction)), 1e-12);
  EXPECT_LT(distance_to_line(closed(0.0), axis), 1e-12);
  EXPECT_LT(distance_to_line(closed(3.0), axis), 1e-12);
}

TEST(Frenet, FrameOrthonormalOnRandomCurves) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> td(0.0, 2 * pi);
  int n = 0;
  while (n < 200) {
    const CurveDef c = parse_curve(oracle::random_trig_curve_text(rng));
    for (int k = 0; k < 10; ++k, ++n) {
      FrenetData f;
      try {
        f = frenet_apparatus(c, td(rng));
      } catch (const MathError&) {
        continue;
      }
      EXPECT_NEAR(norm(f.t_vec), 1.0, 1e-12);
      EXPECT_NEAR(norm(f.n_vec), 1.0, 1e-12);
      EXPECT_NEAR(norm(f.b_vec), 1.0, 1e-12);
      EXPECT_NEAR(dot(f.t_vec, f.n_vec), 0.0, 1e-12);
      EXPECT_NEAR(dot(f.t_vec, f.b_vec), 0.0, 1e-12);
      EXPECT_NEAR(dot(f.n_vec, f.b_vec), 0.0, 1e-12);
      EXPECT_LT(norm(cross(f.t_vec, f.n_vec) - f.b_vec), 1e-10);
      EXPECT_GT(f.kappa, 0.0);
    }
  }
}

// t' = kappa n, n' = -kappa t + tau b, b' = -tau n along arc length,
// with the derivatives taken by central differences of the computed frame.
TEST(Frenet, SerretFrenetEquationsHold) {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> td(0.0, 2 * pi);
  const double h = 1e-5;
  int checked = 0;
  while (checked < 100) {
    const CurveDef c = oracle::random_regular_curve(rng, 0.0, 2 * pi, 32);
    for (int k = 0; k < 10; ++k, ++checked) {
      const double t = td(rng);
      const FrenetData f = frenet_apparatus(c, t), fp = frenet_apparatus(c, t + h), fm = frenet_apparatus(c, t - h);
      const double ds = 2 * h * f.speed;
      const Vector3 dt = (fp.t_vec - fm.t_vec) / ds, dn = (fp.n_vec - fm.n_vec) / ds, db = (fp.b_vec - fm.b_vec) / ds;
      const double scale = std::max({1.0, f.kappa, std::abs(f.tau)});
      EXPECT_LT(norm(dt - f.kappa * f.n_vec), 1e-5 * scale);
      EXPECT_LT(norm(dn - (-f.kappa * f.t_vec + f.tau * f.b_vec)), 1e-5 * scale);
      EXPECT_LT(norm(db - (-f.tau * f.n_vec)), 1e-5 * scale);
      // kappa_s, tau_s against differences of kappa, tau.
      EXPECT_NEAR(f.kappa_s, (fp.kappa - fm.kappa) / ds, 1e-5 * std::max(1.0, std::abs(f.kappa_s)));
      EXPECT_NEAR(f.tau_s, (fp.tau - fm.tau) / ds, 1e-5 * std::max(1.0, std::abs(f.tau_s)));
    }
  }
}

TEST(Frenet, ScaleLaw) {
  std::mt19937 rng(31);
  const oracle::Matrix3 id{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  for (int rep = 0; rep < 5; ++rep) {
    const CurveDef c = oracle::random_regular_curve(rng, 0.0, 2 * pi, 16);
    for (double a : {0.25, 3.0}) {
      oracle::Matrix3 m = id;
      for (int i = 0; i < 3; ++i) m[i][i] = a;
      const CurveDef scaled = oracle::transform(c, m, {0, 0, 0});
      for (double t : {0.3, 2.0, 4.4}) {
        const FrenetData f = frenet_apparatus(c, t), g = frenet_apparatus(scaled, t);
        EXPECT_NEAR(g.kappa, f.kappa / a, 1e-9 * std::max(1.0, f.kappa / a));
        EXPECT_NEAR(g.tau, f.tau / a, 1e-9 * std::max(1.0, std::abs(f.tau) / a));
      }
    }
  }
}

TEST(Frenet, RigidMotionInvariance) {
  std::mt19937 rng(37);
  const auto R = oracle::rotation({1, 2, -0.5}, 0.83);
  for (int rep = 0; rep < 5; ++rep) {
    const CurveDef c = oracle::random_regular_curve(rng, 0.0, 2 * pi, 16);
    const CurveDef moved = oracle::transform(c, R, {3, -1, 2});
    for (double t : {0.1, 1.9, 3.3, 5.0}) {
      const FrenetData f = frenet_apparatus(c, t), g = frenet_apparatus(moved, t);
      EXPECT_NEAR(g.kappa, f.kappa, 1e-9 * std::max(1.0, f.kappa));
      EXPECT_NEAR(g.tau, f.tau, 1e-9 * std::max(1.0, std::abs(f.tau)));
      EXPECT_LT(norm(g.t_vec - oracle::apply(R, f.t_vec)), 1e-9);
      EXPECT_LT(norm(g.n_vec - oracle::apply(R, f.n_vec)), 1e-9);
      EXPECT_LT(norm(g.b_vec - oracle::apply(R, f.b_vec)), 1e-9);
    }
  }
}

TEST(Involute, CircleInvolute) {
  const DerivedCurve inv = involute(circle(), 0.0, {0.0, 2 * pi});
  const Point3 p = inv.point(pi / 2);
  expect_vec_near(p, {pi / 2, 1.0, 0.0}, 1e-10);
  for (double t : {0.5, 1.5, 4.0})
    expect_vec_near(inv.point(t), {std::cos(t) + t * std::sin(t), std::sin(t) - t * std::cos(t), 0.0}, 1e-10);
}

TEST(Involute, TouchesCurveWhereConstantEqualsArcLength) {
  const CurveDef c = parse_curve("(t, t^2, t^3)");
  const Interval range{-1.0, 1.0};
  const double t0 = 0.37;
  const double s0 = arc_length(c, range)(t0);
  const DerivedCurve inv = involute(c, s0, range);
  EXPECT_LT(distance(inv.point(t0), c.point(t0)), 1e-12);
}

TEST(Involute, OrthogonalToTangents) {
  const CurveDef c = parse_curve("(cos(t), sin(2*t), 0.3*t)");
  const Interval range{0.0, 3.0};
  const DerivedCurve inv = involute(c, 1.0, range);
  const double h = 1e-6;
  for (double t : {0.4, 1.7, 2.6}) {
    const Vector3 d_fd = (inv.point(t + h) - inv.point(t - h)) / (2 * h);
    const Vector3 T = frenet_apparatus(c, t).t_vec;
    EXPECT_NEAR(dot(d_fd, T), 0.0, 1e-9 * std::max(1.0, norm(d_fd)));
    EXPECT_LT(norm(inv.derivative(t, 1) - d_fd), 1e-6 * std::max(1.0, norm(d_fd)));
  }
}

TEST(Evolute, PlanarCurvesGiveTheClassicalEvolute) {
  const DerivedCurve e = evolute(circle(), pi / 2, {0.0, 2 * pi});
  for (double t : {0.0, 1.0, 3.0}) expect_vec_near(e.point(t), {0, 0, 0}, 1e-14);

  const CurveDef ellipse = parse_curve("(2*cos(t), sin(t), 0)");
  const DerivedCurve ee = evolute(ellipse, pi / 2, {0.0, 2 * pi});
  for (double t : {0.2, 1.1}) expect_vec_near(ee.point(t), osculating_center(ellipse, t), 1e-13);
}

TEST(Evolute, HelixEvolute) {
  // theta = tau * s + pi/2 with s = sqrt(2) t, so the distance to the z-axis is
  // sqrt(1 + 2 tan^2(t / sqrt 2)).
  const DerivedCurve e = evolute(helix(), pi / 2, {0.0, 2.0});
  for (double t : {0.0, 0.5, 1.0, 1.9}) {
    const Point3 p = e.point(t);
    const double tn = std::tan(t / std::sqrt(2.0));
    EXPECT_NEAR(std::hypot(p.x, p.y), std::sqrt(1 + 2 * tn * tn), 1e-9) << t;
    // The evolute point lies on the curvature axis of the helix.
    EXPECT_LT(distance_to_line(p, curvature_axis(helix(), t)), 1e-12);
  }
}

TEST(Evolute, TangentsAreNormalsOfTheSourceCurve) {
  // E' is parallel to E - c, the defining property of an evolute.
  const CurveDef c = parse_curve("(t, t^2, t^3)");
  const DerivedCurve e = evolute(c, 1.0, {-0.5, 1.0});
  const double h = 1e-6;
  for (double t : {-0.3, 0.2, 0.8}) {
    const Vector3 chord = normalized(e.point(t) - c.point(t));
    const Vector3 jet_d = e.derivative(t, 1);
    const Vector3 fd = (e.point(t + h) - e.point(t - h)) / (2 * h);
    EXPECT_LT(norm(cross(normalized(jet_d), chord)), 1e-9) << t;
    EXPECT_LT(norm(jet_d - fd), 1e-6 * std::max(1.0, norm(fd))) << t;
  }
}

TEST(Evolute, PoleOfCotangent) {
  const DerivedCurve e = evolute(circle(), 0.0, {0.0, 1.0});
  EXPECT_THROW(e.point(0.5), DomainError);
}
