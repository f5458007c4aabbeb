#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "devsurf/singular.hpp"
#include "support/curves.hpp"

using namespace devsurf;
using std::numbers::pi;

namespace {

const CurveDef& helix() {
  static const CurveDef c = parse_curve("(cos(t), sin(t), t)");
  return c;
}
const CurveDef& asteroid() {
  static const CurveDef c = parse_curve("(cos(t)^3, sin(t)^3, cos(2*t))");
  return c;
}
const CurveDef& twisted() {
  static const CurveDef c = parse_curve("(t^2, t^3, t^4)");
  return c;
}
const CurveDef& crosscap() {
  static const CurveDef c = parse_curve("(t, t^2, t^4)");
  return c;
}

// |a'|^2 of the asteroid written out by hand.
double asteroid_speed2(double t) {
  const double c = std::cos(t), s = std::sin(t);
  return 9 * std::pow(c, 4) * s * s + 9 * std::pow(s, 4) * c * c + 16 * std::pow(std::sin(2 * t), 2);
}

}  // namespace

TEST(Singular, TwistedCurveSingularAtOrigin) {
  const auto r = find_curve_singularities(twisted(), {-1, 1}, 256);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r[0], 0.0, 1e-10);
  // Odd grid sizes do not put a node on t = 0.
  const auto r2 = find_curve_singularities(twisted(), {-1, 1}, 101);
  ASSERT_EQ(r2.size(), 1u);
  EXPECT_NEAR(r2[0], 0.0, 1e-10);
  const auto r3 = find_curve_singularities(twisted(), {-0.77, 1.3}, 64);
  ASSERT_EQ(r3.size(), 1u);
  EXPECT_NEAR(r3[0], 0.0, 1e-10);
}

TEST(Singular, AsteroidCusps) {
  const auto r = find_curve_singularities(asteroid(), {0, 2 * pi}, 256);
  ASSERT_EQ(r.size(), 5u);
  for (int k = 0; k < 5; ++k) {
    EXPECT_NEAR(r[k], k * pi / 2, 1e-9);
    EXPECT_LT(std::sqrt(asteroid_speed2(r[k])), 1e-8);
  }
  const auto shifted = find_curve_singularities(asteroid(), {0.1, 6.0}, 97);
  ASSERT_EQ(shifted.size(), 3u);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(shifted[k], (k + 1) * pi / 2, 1e-9);
}

TEST(Singular, RegularCurvesHaveNone) {
  EXPECT_TRUE(find_curve_singularities(helix(), {0, 2 * pi}).empty());
  EXPECT_TRUE(find_curve_singularities(parse_curve("(t, t^2, t^3)"), {-1, 1}).empty());
  EXPECT_THROW(find_curve_singularities(helix(), {0, 1}, 15), InvalidArgument);
}

TEST(Singular, TangentDevClassification) {
  for (double t : {-3.0, 0.0, 0.5, 2.0})
    EXPECT_EQ(classify_tangent_dev_singularity(helix(), t), TangentDevSingularity::CuspidalEdge);
  EXPECT_EQ(classify_tangent_dev_singularity(crosscap(), 0.0), TangentDevSingularity::CuspidalCrossCap);
  EXPECT_EQ(classify_tangent_dev_singularity(crosscap(), 0.3), TangentDevSingularity::CuspidalEdge);
  EXPECT_EQ(classify_tangent_dev_singularity(parse_curve("(2*cos(t), sin(t), 0)"), 1.0),
            TangentDevSingularity::Degenerate);
  EXPECT_THROW(classify_tangent_dev_singularity(twisted(), 0.0), SingularPoint);
}

TEST(Singular, CrossCapTorsionOracle) {
  // det(a', a'', a''') = det[(1,2t,4t^3), (0,2,12t^2), (0,0,24t)] = 48 t.
  const auto j = crosscap().jet<4>(0.0);
  const Vector3 d1 = derivatives(j, 1), d2 = derivatives(j, 2), d3 = derivatives(j, 3), d4 = derivatives(j, 4);
  EXPECT_EQ(det(d1, d2, d3), 0.0);
  EXPECT_EQ(det(d1, d2, d4), 48.0);
  const FrenetData f = frenet_apparatus(crosscap(), 0.0);
  EXPECT_EQ(f.tau, 0.0);
  // tau = 48 t / |a' x a''|^2 near 0, and |a' x a''|^2 = 4 at 0 with speed 1.
  EXPECT_NEAR(f.tau_s, 12.0, 1e-12);
}

TEST(Singular, ClassificationStableUnderPerturbation) {
  for (double t0 : {0.3, 1.0})
    EXPECT_EQ(classify_tangent_dev_singularity(crosscap(), t0),
              classify_tangent_dev_singularity(crosscap(), t0 + 1e-10));
  EXPECT_EQ(classify_tangent_dev_singularity(crosscap(), 1e-10), TangentDevSingularity::CuspidalCrossCap);
}

TEST(Singular, HelixLocusIsOsculatingCenters) {
  const auto loc = surface_singular_locus(helix(), {0, 2 * pi}, 32);
  ASSERT_EQ(loc.size(), 32u);
  for (const auto& s : loc) {
    EXPECT_NEAR(s.lambda_star, 0.0, 1e-14);
    EXPECT_LT(distance(s.point, osculating_center(helix(), s.u)), 1e-14);
  }
}

TEST(Singular, CubicLocusIsOsculatingSphereCenters) {
  const CurveDef cubic = parse_curve("(t, t^2, t^3)");
  const auto loc = surface_singular_locus(cubic, {0.2, 1}, 40);
  ASSERT_EQ(loc.size(), 40u);
  const auto S = curvature_axis_surface(cubic, {0.2, 1});
  for (const auto& s : loc) {
    const Point3 m = oracle::contact_sphere_center(cubic, s.u);
    EXPECT_LT(distance(s.point, m), 1e-9 * std::max(1.0, norm(m)));
    const auto d = ruled_derivatives(S, s.u, s.lambda_star);
    const double scale = std::max(1.0, norm(ruled_derivatives(S, s.u, s.lambda_star + 1).su));
    EXPECT_LT(norm(cross(d.su, d.sv)), 1e-7 * scale);
  }
}

TEST(Singular, PlanarCurveHasNoLocus) {
  EXPECT_TRUE(surface_singular_locus(parse_curve("(2*cos(t), sin(t), 0)"), {0, 2 * pi}).empty());
  EXPECT_TRUE(surface_singular_locus(parse_curve("(t, t^2, 0)"), {-1, 1}).empty());
}

TEST(Singular, TwistedRegularPartHasLocus) {
  const auto loc = surface_singular_locus(twisted(), {0.1, 1}, 64);
  EXPECT_FALSE(loc.empty());
  for (const auto& s : loc) EXPECT_TRUE(std::isfinite(s.point.x) && std::isfinite(s.point.y) && std::isfinite(s.point.z));
}

TEST(Singular, ReportFindsCrossCapBetweenGridPoints) {
  // 0 is not a grid node of [-1, 1.1] with 64 points; the tau sign change is refined.
  const auto rep = singularity_report(crosscap(), {-1, 1.1}, 64);
  int crosscaps = 0;
  for (const auto& e : rep.tangent_dev_class) {
    if (e.kind == TangentDevSingularity::CuspidalCrossCap) {
      ++crosscaps;
      EXPECT_NEAR(e.t, 0.0, 1e-12);
    } else {
      EXPECT_EQ(e.kind, TangentDevSingularity::CuspidalEdge);
    }
  }
  EXPECT_EQ(crosscaps, 1);
  EXPECT_TRUE(rep.curve_singular_params.empty());
}

TEST(Singular, ReportForHelixAndAsteroid) {
  const auto h = singularity_report(helix(), {0, 2 * pi}, 64);
  EXPECT_TRUE(h.curve_singular_params.empty());
  ASSERT_EQ(h.tangent_dev_class.size(), 64u);
  for (const auto& e : h.tangent_dev_class) EXPECT_EQ(e.kind, TangentDevSingularity::CuspidalEdge);

  const auto a = singularity_report(asteroid(), {0, 2 * pi}, 256);
  ASSERT_EQ(a.curve_singular_params.size(), 5u);
  // Grid points on the cusps are skipped rather than classified.
  for (const auto& e : a.tangent_dev_class)
    for (double cusp : a.curve_singular_params) EXPECT_GT(std::abs(e.t - cusp), 1e-6);
}
