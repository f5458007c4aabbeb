#pragma once

/**
 * @file classify.hpp
 * @brief Sorting a developable ruled surface into cylinder, cone or tangent type.
 *
 * The tests run in a fixed order and the first hit wins:
 *   1. max |det(x', y, y')| > tol * scale   -> NonDevelopable
 *   2. max |y'| <= tol                       -> Cylinder
 *   3. least-squares common point of the rulings with RMS distance
 *      <= tol * scale                        -> Cone
 *   4. otherwise                             -> Tangent
 * where scale = 1 + max |x(u)| over the samples.
 */

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "ruled.hpp"

namespace devsurf {

struct CylinderType {};

struct ConeType {
  Point3 apex;
  double apex_residual = 0.0;  // RMS distance from apex to the sampled rulings
};

struct TangentType {
  /// RMS of |sin| of the angle between the striction-curve tangent and the director.
  double regression_rms = 0.0;
};

struct NonDevelopableType {
  double max_residual = 0.0;
};

using ClassKind = std::variant<CylinderType, ConeType, TangentType, NonDevelopableType>;

struct Classification {
  ClassKind kind;
  int samples_used = 0;
  double tolerance = 0.0;

  template <class T>
  bool is() const {
    return std::holds_alternative<T>(kind);
  }

  const char* name() const {
    return std::visit(
        [](const auto& k) -> const char* {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, CylinderType>) return "Cylinder";
          else if constexpr (std::is_same_v<K, ConeType>) return "Cone";
          else if constexpr (std::is_same_v<K, TangentType>) return "Tangent";
          else return "NonDevelopable";
        },
        kind);
  }
};

struct ClassifyOptions {
  int samples = 64;
  double tol = 1e-6;
};

struct ApexFit {
  bool ok = false;  // false when the rulings are (nearly) parallel
  Point3 apex;
  double rms = 0.0;
};

/// Point minimizing the summed squared distance to lines (o_i, d_i), |d_i| = 1.
inline ApexFit fit_common_point(const std::vector<Point3>& origins, const std::vector<Vector3>& dirs) {
  Eigen::Matrix3d A = Eigen::Matrix3d::Zero();
  Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
  for (std::size_t i = 0; i < origins.size(); ++i) {
    const Eigen::Vector3d d(dirs[i].x, dirs[i].y, dirs[i].z);
    const Eigen::Vector3d o(origins[i].x, origins[i].y, origins[i].z);
    const Eigen::Matrix3d P = Eigen::Matrix3d::Identity() - d * d.transpose();
    A += P;
    rhs += P * o;
  }
  const Eigen::LDLT<Eigen::Matrix3d> ldlt(A);
  const Eigen::Vector3d D = ldlt.vectorD().cwiseAbs();
  ApexFit fit;
  if (ldlt.info() != Eigen::Success || !(D.minCoeff() > 1e-10 * std::max(1.0, D.maxCoeff()))) return fit;
  const Eigen::Vector3d p = ldlt.solve(rhs);
  fit.ok = true;
  fit.apex = {p.x(), p.y(), p.z()};
  double sum = 0.0;
  for (std::size_t i = 0; i < origins.size(); ++i) {
    const Vector3 w = fit.apex - origins[i];
    sum += norm2(w - dot(w, dirs[i]) * dirs[i]);
  }
  fit.rms = std::sqrt(sum / static_cast<double>(origins.size()));
  return fit;
}

inline Classification classify_developable(const RuledSurface& S, const ClassifyOptions& opt = {}) {
  if (opt.samples < 8) throw TooFewSamples("classification needs at least 8 samples, got " + std::to_string(opt.samples));
  const Interval& dom = S.u_domain();
  const int n = opt.samples;

  std::vector<double> us(n);
  std::vector<Point3> xs(n);
  std::vector<Vector3> ys(n);
  double scale = 0.0, max_res = 0.0, max_yd = 0.0;
  for (int i = 0; i < n; ++i) {
    us[i] = dom.sample(i, n);
    const auto x = S.base(us[i]);
    const auto y = S.director(us[i]);
    xs[i] = values(x);
    ys[i] = values(y);
    scale = std::max(scale, norm(xs[i]));
    max_yd = std::max(max_yd, norm(derivatives(y, 1)));
    max_res = std::max(max_res, std::abs(det(derivatives(x, 1), ys[i], derivatives(y, 1))));
  }
  scale += 1.0;

  Classification out{CylinderType{}, n, opt.tol};
  if (max_res > opt.tol * scale) {
    out.kind = NonDevelopableType{max_res};
    return out;
  }
  if (max_yd <= opt.tol) return out;

  const ApexFit fit = fit_common_point(xs, ys);
  if (!fit.ok) return out;
  if (fit.rms <= opt.tol * scale) {
    out.kind = ConeType{fit.apex, fit.rms};
    return out;
  }

  double sum = 0.0;
  int used = 0;
  for (int i = 0; i < n; ++i) {
    Vector3 ds;
    try {
      ds = derivatives(striction_jet(S, us[i]), 1);
    } catch (const CylindricalRuling&) {
      continue;
    }
    const double len = norm(ds);
    if (!(len > 1e-12 * scale)) continue;
    sum += norm2(cross(ds / len, ys[i]));
    ++used;
  }
  out.kind = TangentType{used > 0 ? std::sqrt(sum / used) : 0.0};
  return out;
}

}  // namespace devsurf
