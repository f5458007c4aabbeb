#pragma once

/**
 * @file commands.hpp
 * @brief The operations behind the `devsurf` command line tool.
 *
 * Each command validates its options, runs the computation, writes its files
 * and returns a RunReport. Errors are thrown as devsurf::Error; `run_command`
 * turns them into an exit code plus an error JSON document.
 */

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "classify.hpp"
#include "curve.hpp"
#include "errors.hpp"
#include "expr.hpp"
#include "frenet.hpp"
#include "inverse.hpp"
#include "mesh.hpp"
#include "report.hpp"
#include "ruled.hpp"
#include "singular.hpp"

namespace devsurf::cli {

struct CommandResult {
  int exit_code = 0;
  Json json;
};

/// Runs `body`, mapping library errors to exit codes 1/2/3.
inline CommandResult run_command(const std::string& name, const std::function<RunReport()>& body) {
  try {
    return {0, body().to_json()};
  } catch (const Error& e) {
    return {exit_code_for(e), error_json(name, e.kind(), e.what())};
  } catch (const std::filesystem::filesystem_error& e) {
    return {3, error_json(name, "IoError", e.what())};
  }
}

/// "a:b" where a and b are constant expressions such as `2*pi`.
inline Interval parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos || text.find(':', colon + 1) != std::string::npos)
    throw InvalidArgument("range must be written a:b, got '" + text + "'");
  auto side = [&](const std::string& s) {
    detail::Parser p(s);
    const Expr e = p.parse_single();
    if (p.param_name()) throw InvalidArgument("range bounds must be constant, got '" + s + "'");
    return eval_expr(e, 0.0);
  };
  const Interval r{side(text.substr(0, colon)), side(text.substr(colon + 1))};
  require_valid(r, "range");
  return r;
}

inline std::string format_range(const Interval& r) { return format_number(r.lo) + ":" + format_number(r.hi); }

namespace detail {

struct Stats {
  double min = 0, max = 0, mean = 0;
  int count = 0;
};

inline Stats stats(const std::vector<double>& v) {
  Stats s;
  if (v.empty()) return s;
  s.min = *std::min_element(v.begin(), v.end());
  s.max = *std::max_element(v.begin(), v.end());
  double sum = 0;
  for (double x : v) sum += x;
  s.mean = sum / v.size();
  s.count = static_cast<int>(v.size());
  return s;
}

inline Json to_json(const Stats& s) {
  return Json{{"min", s.min}, {"max", s.max}, {"mean", s.mean}, {"count", s.count}};
}

/// Max |det(x', y, y')| over n rulings; rulings that fail to evaluate are counted.
inline Json residual_metrics(const RuledSurface& S, Interval range, int n) {
  double worst = 0;
  int failed = 0;
  for (int i = 0; i < n; ++i) {
    try {
      worst = std::max(worst, std::abs(developability_residual(S, range.sample(i, n))));
    } catch (const MathError&) {
      ++failed;
    }
  }
  return Json{{"max_residual", worst}, {"residual_samples", n - failed}, {"residual_failures", failed}};
}

/// Warnings for curve singularities inside or within a quarter-length of `range`.
inline std::vector<std::string> nearby_singularities(const CurveDef& c, Interval range) {
  const double margin = 0.25 * range.length();
  std::vector<std::string> out;
  std::vector<double> found;
  try {
    found = find_curve_singularities(c, {range.lo - margin, range.hi + margin}, kDefaultSingularGrid);
  } catch (const Error&) {
    return out;
  }
  for (double t : found)
    out.push_back("curve singularity at t = " + format_number(t) +
                  (range.contains(t) ? " inside" : " near") + " the sampled range " + format_range(range));
  return out;
}

inline Json classification_json(const Classification& r) {
  Json j{{"kind", r.name()}, {"samples_used", r.samples_used}, {"tolerance", r.tolerance}};
  if (auto* cone = std::get_if<ConeType>(&r.kind)) {
    j["apex"] = devsurf::to_json(cone->apex);
    j["apex_residual"] = cone->apex_residual;
  } else if (auto* tan = std::get_if<TangentType>(&r.kind)) {
    j["regression_rms"] = tan->regression_rms;
  } else if (auto* nd = std::get_if<NonDevelopableType>(&r.kind)) {
    j["max_residual"] = nd->max_residual;
  }
  return j;
}

inline Json singularity_json(const SingularityReport& rep) {
  Json locus = Json::array();
  for (const auto& s : rep.surface_singular_samples)
    locus.push_back({{"u", s.u}, {"lambda_star", s.lambda_star}, {"point", devsurf::to_json(s.point)}});
  Json cls = Json::array();
  for (const auto& e : rep.tangent_dev_class) cls.push_back({{"t", e.t}, {"kind", singularity_name(e.kind)}});
  return Json{{"curve_singular_params", rep.curve_singular_params},
              {"surface_singular_samples", locus},
              {"tangent_dev_class", cls}};
}

inline void require_positive(int v, const char* what, int min = 1) {
  if (v < min) throw InvalidArgument(std::string(what) + " must be at least " + std::to_string(min));
}

inline std::filesystem::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw IoError("cannot create output directory " + dir);
  return dir;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// frenet

inline RunReport cmd_frenet(const std::string& curve, double t) {
  RunReport rep{"frenet"};
  rep.inputs = {{"curve", curve}, {"t", t}};
  const CurveDef c = parse_curve(curve);
  const FrenetData f = frenet_apparatus(c, t);
  rep.metrics = {{"kappa", f.kappa},
                 {"tau", f.tau},
                 {"kappa_s", f.kappa_s},
                 {"tau_s", f.tau_s},
                 {"speed", f.speed},
                 {"point", to_json(c.point(t))},
                 {"t_vec", to_json(f.t_vec)},
                 {"n_vec", to_json(f.n_vec)},
                 {"b_vec", to_json(f.b_vec)},
                 {"osculating_center", to_json(osculating_center(c, t))}};
  if (std::abs(f.tau) > Tolerances{}.tau)
    rep.metrics["osculating_sphere_center"] = to_json(osculating_sphere_center(c, t));
  else
    rep.warnings.push_back("torsion vanishes; no osculating sphere center");
  return rep;
}

// ---------------------------------------------------------------------------
// surface

struct SurfaceOptions {
  std::string curve;
  std::string kind = "curvature-axis";
  Interval u_range = kFullTurn;
  Interval lambda_range{-1, 1};
  int nu = 128;
  int nl = 16;
  std::string out = "surface.obj";
  std::string csv;  // optional sample dump
};

inline RuledSurface make_surface(const CurveDef& c, const std::string& kind, Interval range) {
  if (kind == "curvature-axis") return curvature_axis_surface(c, range);
  if (kind == "tangent-dev") return tangent_developable(c, range);
  throw InvalidArgument("unknown surface kind '" + kind + "' (expected curvature-axis or tangent-dev)");
}

inline RunReport cmd_surface(const SurfaceOptions& o) {
  RunReport rep{"surface"};
  rep.inputs = {{"curve", o.curve},   {"kind", o.kind}, {"u_range", to_json(o.u_range)},
                {"lambda_range", to_json(o.lambda_range)}, {"nu", o.nu}, {"nl", o.nl}, {"out", o.out}};
  if (!o.csv.empty()) rep.inputs["csv"] = o.csv;
  const CurveDef c = parse_curve(o.curve);
  require_valid(o.u_range, "u range");
  require_valid(o.lambda_range, "lambda range");
  detail::require_positive(o.nu, "nu", 2);
  detail::require_positive(o.nl, "nl", 2);
  const RuledSurface S = make_surface(c, o.kind, o.u_range);

  rep.warnings = detail::nearby_singularities(c, o.u_range);
  const Mesh m = tessellate(S, o.u_range, o.lambda_range, o.nu, o.nl);
  write_obj(m, o.out);
  rep.outputs.push_back(o.out);
  if (!o.csv.empty()) {
    write_text(o.csv, surface_csv(S, o.u_range, o.lambda_range, o.nu, o.nl));
    rep.outputs.push_back(o.csv);
  }
  rep.metrics = detail::residual_metrics(S, o.u_range, o.nu);
  rep.metrics["vertices"] = m.vertices.size();
  rep.metrics["triangles"] = m.triangles.size();
  rep.metrics["degenerate_skipped"] = m.degenerate_skipped;
  return rep;
}

// ---------------------------------------------------------------------------
// classify

inline RunReport cmd_classify(const std::string& curve, Interval u_range, int samples = 64, double tol = 1e-6) {
  RunReport rep{"classify"};
  rep.inputs = {{"curve", curve}, {"u_range", to_json(u_range)}, {"samples", samples}, {"tol", tol}};
  const CurveDef c = parse_curve(curve);
  require_valid(u_range, "u range");
  if (!(tol > 0)) throw InvalidArgument("tol must be positive");
  rep.metrics = detail::classification_json(classify_developable(curvature_axis_surface(c, u_range), {samples, tol}));
  return rep;
}

// ---------------------------------------------------------------------------
// invert

struct InvertOptions {
  std::string x_curve;
  double kappa = 0.5;
  SolutionConstants constants{1, 1, 1, 0, 1, 0};
  Interval range{0, 4 * std::numbers::pi};
  std::string out = "alpha.csv";
  int samples = 512;
};

inline RunReport cmd_invert(const InvertOptions& o) {
  RunReport rep{"invert"};
  rep.inputs = {{"x_curve", o.x_curve}, {"kappa", o.kappa}, {"constants", o.constants},
                {"range", to_json(o.range)}, {"out", o.out}, {"samples", o.samples}};
  const CurveDef x = parse_curve(o.x_curve);
  detail::require_positive(o.samples, "samples", 2);
  const InverseSolution sol = recover_alpha_tangent(x, o.kappa, o.constants, o.range);

  std::vector<CurveSample> rows;
  double sum2 = 0, worst = 0;
  for (int i = 0; i < o.samples; ++i) {
    const double s = o.range.sample(i, o.samples);
    const double r = norm(ode_residual(sol.alpha, x, o.kappa, s));
    sum2 += r * r;
    worst = std::max(worst, r);
    rows.push_back({s, sol.alpha.point(s), r});
  }
  write_text(o.out, curve_csv(rows));
  rep.outputs.push_back(o.out);

  const AlignmentReport al = alignment_diagnostics(sol, 64);
  std::vector<double> kap, tau, ang, dist;
  for (const auto& smp : al.samples) {
    kap.push_back(smp.kappa);
    tau.push_back(smp.tau);
    ang.push_back(smp.angle);
    dist.push_back(smp.distance);
  }
  rep.metrics = {{"rms_ode_residual", std::sqrt(sum2 / o.samples)},
                 {"max_ode_residual", worst},
                 {"alpha_kappa", detail::to_json(detail::stats(kap))},
                 {"alpha_tau", detail::to_json(detail::stats(tau))},
                 {"alignment_angle", detail::to_json(detail::stats(ang))},
                 {"alignment_distance", detail::to_json(detail::stats(dist))},
                 {"alignment_skipped", al.skipped}};
  try {
    rep.metrics["x_planar"] = planar_case_note(x, o.range);
  } catch (const MathError&) {
    rep.metrics["x_planar"] = nullptr;
    rep.warnings.push_back("x is not regular on the range; planarity not evaluated");
  }
  if (al.skipped > 0) rep.warnings.push_back(std::to_string(al.skipped) + " alignment samples skipped (irregular)");
  return rep;
}

// ---------------------------------------------------------------------------
// singular

inline RunReport cmd_singular(const std::string& curve, Interval range, int n_grid = kDefaultSingularGrid,
                              double tol_sing = kTolSing) {
  RunReport rep{"singular"};
  rep.inputs = {{"curve", curve}, {"range", to_json(range)}, {"n_grid", n_grid}, {"tol_sing", tol_sing}};
  const CurveDef c = parse_curve(curve);
  rep.metrics = detail::singularity_json(singularity_report(c, range, n_grid, tol_sing));
  return rep;
}

// ---------------------------------------------------------------------------
// example

inline const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names{"helix", "twisted", "asteroid", "nephroid"};
  return names;
}

/// Reference ruling of the asteroid's curvature-axis surface in closed form.
inline Point3 asteroid_reference_point(double t, double lambda) {
  const double c = std::cos(t), s = std::sin(t);
  return {-c * (110 * c * c - 12 * lambda - 125) / 15, s * (110 * c * c - 12 * lambda + 15) / 15,
          std::cos(2 * t) - 3 * lambda / 5};
}

/// Largest line-to-line deviation between computed curvature axes and the
/// reference rulings for `n` parameters in `range`.
inline double asteroid_reference_deviation(Interval range, int n) {
  const CurveDef c = parse_curve("(cos(t)^3, sin(t)^3, cos(2*t))");
  double worst = 0;
  for (int i = 0; i < n; ++i) {
    const double t = range.sample(i, n);
    const Line3 axis = curvature_axis(c, t);
    const Point3 p0 = asteroid_reference_point(t, 0), p1 = asteroid_reference_point(t, 1);
    const Vector3 w = p0 - axis.origin;
    worst = std::max(worst, norm(w - dot(w, axis.direction) * axis.direction));
    worst = std::max(worst, norm(cross(normalized(p1 - p0), axis.direction)));
  }
  return worst;
}

namespace detail {

struct ExampleContext {
  std::filesystem::path dir;
  RunReport& rep;

  std::string write_mesh(const RuledSurface& S, Interval ur, Interval lr, int nu, int nl, const std::string& name,
                         const std::string& metric_key) {
    const Mesh m = tessellate(S, ur, lr, nu, nl);
    write_obj(m, (dir / name).string());
    rep.outputs.push_back(name);
    rep.metrics["meshes"][metric_key] = {{"file", name},
                                         {"u_range", devsurf::to_json(ur)},
                                         {"lambda_range", devsurf::to_json(lr)},
                                         {"vertices", m.vertices.size()},
                                         {"triangles", m.triangles.size()},
                                         {"degenerate_skipped", m.degenerate_skipped}};
    return name;
  }

  void warn_failed_rulings() {
    const int failed = rep.metrics["surface"]["residual_failures"].get<int>();
    if (failed > 0) rep.warnings.push_back(std::to_string(failed) + " rulings at curve singularities were not evaluated");
  }

  void write_texture() {
    write_circle_texture((dir / "circles.ppm").string(), 8, 512);
    rep.outputs.push_back("circles.ppm");
  }
};

inline void example_helix(ExampleContext& ctx) {
  using std::numbers::pi;
  const std::string text = "(cos(t), sin(t), t)";
  const CurveDef c = parse_curve(text);
  auto& m = ctx.rep.metrics;
  m["curve"] = text;

  double kdev = 0;
  for (int i = 0; i < 10; ++i) kdev = std::max(kdev, std::abs(frenet_apparatus(c, 0.7 * i - 3).kappa - 0.5));
  m["kappa"] = frenet_apparatus(c, 1.0).kappa;
  m["tau"] = frenet_apparatus(c, 1.0).tau;
  m["kappa_max_deviation"] = kdev;

  const RuledSurface S = curvature_axis_surface(c, kFullTurn);
  m["surface"] = residual_metrics(S, kFullTurn, 128);
  ctx.write_mesh(S, kFullTurn, {-1, 1}, 128, 16, "helix_curvature_axis.obj", "curvature_axis");
  m["classification"] = classification_json(classify_developable(S));

  // Generating curve recovered from the helix as regression curve.
  const CurveDef x = parse_curve("(cos(s), sin(s), s)");
  const Interval r{0, 4 * pi};
  const InverseSolution sol = recover_alpha_tangent(x, 0.5, {1, 1, 1, 0, 1, 0}, r);
  const CurveDef ref = parse_curve(
      "(-(2*cos(s/2)^2)/3 + cos(s/2) + sin(s/2) + 1/3, -(2*sin(s/2)*cos(s/2))/3 + sin(s/2), s + sin(s/2))");
  double ref_res = 0;
  for (int i = 0; i < 64; ++i) {
    const double s = r.sample(i, 64);
    const auto j = ref.jet<2>(s);
    ref_res = std::max(ref_res, norm(derivatives(j, 2) + 0.25 * values(j) - 0.25 * x.point(s)));
  }
  // The recovered and reference curves differ by A sin(s/2) + B cos(s/2) per coordinate.
  const double s1 = 0.7, s2 = 2.9;
  const Vector3 d1 = sol.alpha.point(s1) - ref.point(s1), d2 = sol.alpha.point(s2) - ref.point(s2);
  double fit = 0;
  for (int i = 0; i < 64; ++i) {
    const double s = r.sample(i, 64);
    const Vector3 d = sol.alpha.point(s) - ref.point(s);
    for (int k = 0; k < 3; ++k) {
      const double a = std::sin(s1 / 2), b = std::cos(s1 / 2), cc = std::sin(s2 / 2), dd = std::cos(s2 / 2);
      const double det2 = a * dd - b * cc;
      const double A = (d1[k] * dd - b * d2[k]) / det2, B = (a * d2[k] - cc * d1[k]) / det2;
      fit = std::max(fit, std::abs(d[k] - (A * std::sin(s / 2) + B * std::cos(s / 2))));
    }
  }
  m["inverse"] = {{"kappa", 0.5},
                  {"constants", sol.constants},
                  {"range", devsurf::to_json(r)},
                  {"rms_ode_residual", rms_ode_residual(sol)},
                  {"reference_ode_residual", ref_res},
                  {"homogeneous_fit_residual", fit}};
  m["singular"] = {{"curve_singular_params", find_curve_singularities(c, kFullTurn)},
                   {"tangent_dev_kind", singularity_name(classify_tangent_dev_singularity(c, 1.0))}};
}

inline void example_twisted(ExampleContext& ctx) {
  const std::string text = "(t^2, t^3, t^4)";
  const CurveDef c = parse_curve(text);
  const Interval ur{0.1, 1.5};
  auto& m = ctx.rep.metrics;
  m["curve"] = text;
  // Meshing starts at t = 0.1 to stay clear of the singular point at t = 0.
  ctx.rep.warnings = nearby_singularities(c, ur);
  const RuledSurface S = curvature_axis_surface(c, ur);
  m["surface"] = residual_metrics(S, ur, 128);
  ctx.write_mesh(S, ur, {-1, 1}, 128, 16, "twisted_curvature_axis.obj", "curvature_axis");
  m["curve_singular_params"] = find_curve_singularities(c, {-1, 1.5});
  const auto locus = surface_singular_locus(c, ur, 64);
  m["singular_locus_samples"] = locus.size();
  m["classification"] = classification_json(classify_developable(S));
}

inline void example_asteroid(ExampleContext& ctx) {
  using std::numbers::pi;
  const std::string text = "(cos(t)^3, sin(t)^3, cos(2*t))";
  const CurveDef c = parse_curve(text);
  auto& m = ctx.rep.metrics;
  m["curve"] = text;
  const RuledSurface S = curvature_axis_surface(c, kFullTurn);
  m["surface"] = residual_metrics(S, kFullTurn, 128);
  const std::pair<double, const char*> variants[] = {{0.5, "asteroid_lambda_0.5.obj"},
                                                     {2.0, "asteroid_lambda_2.obj"},
                                                     {5.0, "asteroid_lambda_5.obj"}};
  for (const auto& [half, name] : variants)
    ctx.write_mesh(S, kFullTurn, {-half, half}, 256, 16, name, std::string("lambda_") + format_number(half));
  m["reference_max_deviation"] = asteroid_reference_deviation({0.2, 1.3}, 23);
  m["curve_singular_params"] = find_curve_singularities(c, kFullTurn);
  ctx.warn_failed_rulings();
}

inline void example_nephroid(ExampleContext& ctx) {
  using std::numbers::pi;
  const std::string text = "(3/4*cos(t) - 1/4*cos(3*t), 3/4*sin(t) - 1/4*sin(3*t), sqrt(3)/2*cos(t))";
  const CurveDef c = parse_curve(text);
  auto& m = ctx.rep.metrics;
  m["curve"] = text;
  const RuledSurface S = curvature_axis_surface(c, kFullTurn);
  m["surface"] = residual_metrics(S, kFullTurn, 128);
  ctx.write_mesh(S, kFullTurn, {-1.5, 1.5}, 256, 16, "nephroid_curvature_axis.obj", "curvature_axis");
  // Classification runs on one cusp-free arc.
  const Interval arc{0.2, pi - 0.2};
  m["classification"] = classification_json(classify_developable(curvature_axis_surface(c, arc)));
  m["classification_range"] = devsurf::to_json(arc);
  m["curve_singular_params"] = find_curve_singularities(c, kFullTurn);
  double radius_dev = 0;
  for (int i = 0; i < 64; ++i) radius_dev = std::max(radius_dev, std::abs(norm(c.point(kFullTurn.sample(i, 64))) - 1));
  m["sphere_radius_deviation"] = radius_dev;
  ctx.warn_failed_rulings();
}

}  // namespace detail

/// Reproduces one worked example into `out_dir`: meshes, texture and report.json.
inline RunReport cmd_example(const std::string& name, const std::string& out_dir) {
  RunReport rep{"example"};
  rep.inputs = {{"name", name}};
  const auto& names = example_names();
  if (std::find(names.begin(), names.end(), name) == names.end())
    throw InvalidArgument("unknown example '" + name + "' (expected helix, twisted, asteroid or nephroid)");
  detail::ExampleContext ctx{detail::prepare_dir(out_dir), rep};
  if (name == "helix") detail::example_helix(ctx);
  if (name == "twisted") detail::example_twisted(ctx);
  if (name == "asteroid") detail::example_asteroid(ctx);
  if (name == "nephroid") detail::example_nephroid(ctx);
  ctx.write_texture();
  rep.outputs.push_back("report.json");
  write_text((ctx.dir / "report.json").string(), rep.to_json().dump(2) + "\n");
  return rep;
}

}  // namespace devsurf::cli
