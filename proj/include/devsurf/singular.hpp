#pragma once

/**
 * @file singular.hpp
 * @brief Curve singularities, the singular locus of the curvature-axis surface,
 *        and the edge / cross-cap split for tangent developables.
 *
 * A tangent developable is a cuspidal edge along a(t) where tau(t) != 0 and a
 * cuspidal cross-cap at t0 where tau(t0) = 0 and tau'(t0) != 0. Anything else
 * is reported as Degenerate.
 */

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "curve.hpp"
#include "errors.hpp"
#include "frenet.hpp"
#include "interval.hpp"
#include "ruled.hpp"

namespace devsurf {

/// Absolute band on |a'|, |tau| and |tau'|.
inline constexpr double kTolSing = 1e-8;
inline constexpr int kDefaultSingularGrid = 256;

enum class TangentDevSingularity { CuspidalEdge, CuspidalCrossCap, Degenerate };

inline const char* singularity_name(TangentDevSingularity k) {
  switch (k) {
    case TangentDevSingularity::CuspidalEdge: return "CuspidalEdge";
    case TangentDevSingularity::CuspidalCrossCap: return "CuspidalCrossCap";
    case TangentDevSingularity::Degenerate: return "Degenerate";
  }
  return "?";
}

struct SingularSample {
  double u = 0.0;
  double lambda_star = 0.0;
  Point3 point;
};

struct ClassifiedParam {
  double t = 0.0;
  TangentDevSingularity kind = TangentDevSingularity::Degenerate;
};

struct SingularityReport {
  std::vector<double> curve_singular_params;
  std::vector<SingularSample> surface_singular_samples;
  std::vector<ClassifiedParam> tangent_dev_class;
};

namespace detail {

inline void require_grid(int n_grid) {
  if (n_grid < 16) throw InvalidArgument("grid needs at least 16 points, got " + std::to_string(n_grid));
}

/// Root of f on [a, b] with f(a) <= 0 <= f(b) (or the reverse), to width `width`.
inline double bisect(const std::function<double(double)>& f, double a, double b, double fa, double width) {
  const bool rising = fa <= 0.0;
  while (b - a > width) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double fm = f(m);
    if ((fm <= 0.0) == rising) {
      a = m;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

inline void append_unique(std::vector<double>& out, double t, double eps = 1e-9) {
  for (double v : out)
    if (std::abs(v - t) <= eps) return;
  out.push_back(t);
}

}  // namespace detail

/// Parameters in `range` where |a'| < 1e-8: local minima of |a'|^2 located by
/// bisection on d|a'|^2/dt to 1e-12.
inline std::vector<double> find_curve_singularities(const CurveDef& c, Interval range, int n_grid = kDefaultSingularGrid) {
  detail::require_grid(n_grid);
  require_valid(range, "singularity search");
  auto slope = [&c](double t) {
    const auto j = c.jet<2>(t);
    return 2.0 * dot(derivatives(j, 1), derivatives(j, 2));
  };
  auto speed = [&c](double t) { return norm(derivatives(c.jet<1>(t), 1)); };

  std::vector<double> grid(n_grid), g(n_grid);
  for (int i = 0; i < n_grid; ++i) {
    grid[i] = range.sample(i, n_grid);
    g[i] = slope(grid[i]);
  }
  std::vector<double> out;
  for (int i = 0; i + 1 < n_grid; ++i) {
    if (!(g[i] <= 0.0 && g[i + 1] >= 0.0)) continue;
    const double t = detail::bisect(slope, grid[i], grid[i + 1], g[i], 1e-12);
    if (speed(t) < 1e-8) detail::append_unique(out, t);
  }
  for (double t : {range.lo, range.hi})
    if (speed(t) < 1e-8) detail::append_unique(out, t);
  std::sort(out.begin(), out.end());
  return out;
}

/// Cuspidal edge, cross-cap or degenerate at a regular point t0. tau' is the
/// arc-length derivative.
inline TangentDevSingularity classify_tangent_dev_singularity(const CurveDef& c, double t0, double tol_sing = kTolSing) {
  const FrenetData f = frenet_apparatus(c, t0);
  if (std::abs(f.tau) > tol_sing) return TangentDevSingularity::CuspidalEdge;
  if (std::abs(f.tau_s) > tol_sing) return TangentDevSingularity::CuspidalCrossCap;
  return TangentDevSingularity::Degenerate;
}

/// Edge of regression samples (u, lambda*, R(u, lambda*)) on the curvature-axis
/// surface, for grid points that are regular with |tau| > tol_sing.
inline std::vector<SingularSample> surface_singular_locus(const CurveDef& c, Interval range,
                                                          int n_grid = kDefaultSingularGrid,
                                                          double tol_sing = kTolSing) {
  detail::require_grid(n_grid);
  require_valid(range, "singular locus");
  const RuledSurface S = curvature_axis_surface(c, range);
  std::vector<SingularSample> out;
  for (int i = 0; i < n_grid; ++i) {
    const double u = range.sample(i, n_grid);
    FrenetData f;
    try {
      f = frenet_apparatus(c, u);
    } catch (const MathError&) {
      continue;
    }
    if (!(std::abs(f.tau) > tol_sing)) continue;
    const double ls = -f.kappa_s / (f.kappa * f.kappa * f.tau);
    out.push_back({u, ls, eval_surface(S, u, ls)});
  }
  return out;
}

/// Full scan: curve singularities, the singular locus, and the tangent
/// developable type at every regular grid point plus every refined zero of tau.
inline SingularityReport singularity_report(const CurveDef& c, Interval range, int n_grid = kDefaultSingularGrid,
                                            double tol_sing = kTolSing) {
  SingularityReport rep;
  rep.curve_singular_params = find_curve_singularities(c, range, n_grid);
  rep.surface_singular_samples = surface_singular_locus(c, range, n_grid, tol_sing);

  auto tau_at = [&c](double t) -> std::optional<double> {
    try {
      return frenet_apparatus(c, t).tau;
    } catch (const MathError&) {
      return std::nullopt;
    }
  };
  std::vector<double> params;
  std::optional<double> prev;
  for (int i = 0; i < n_grid; ++i) {
    const double t = range.sample(i, n_grid);
    const auto tau = tau_at(t);
    if (tau) params.push_back(t);
    if (tau && prev && (*prev < 0.0) != (*tau < 0.0) && *prev != 0.0 && *tau != 0.0) {
      const double a = range.sample(i - 1, n_grid);
      auto f = [&](double x) { return tau_at(x).value_or(0.0); };
      params.push_back(detail::bisect(f, a, t, *prev, 1e-12));
    }
    prev = tau;
  }
  std::sort(params.begin(), params.end());
  for (double t : params) {
    // A sign change of tau can straddle a cusp; the refined point is then singular.
    try {
      rep.tangent_dev_class.push_back({t, classify_tangent_dev_singularity(c, t, tol_sing)});
    } catch (const MathError&) {
    }
  }
  return rep;
}

}  // namespace devsurf
