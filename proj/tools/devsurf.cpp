// devsurf: command line front end. Every subcommand prints one JSON document
// on stdout; exit codes are 0 ok, 1 input, 2 math, 3 I/O.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "devsurf/commands.hpp"

using namespace devsurf;
using namespace devsurf::cli;

namespace {

// Ranges are kept as text so bad bounds surface as JSON errors, not CLI11 usage text.
struct RangeArg {
  std::string text;
  Interval get() const { return parse_range(text); }
};

void add_range(CLI::App* sub, const std::string& flag, RangeArg& r, const std::string& help) {
  sub->add_option(flag, r.text, help + " as a:b")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Developable ruled surfaces generated by curvature axes of space curves."};
  app.require_subcommand(1);
  std::function<RunReport()> job;
  std::string name;

  // frenet
  std::string f_curve;
  double f_t = 0.0;
  auto* frenet = app.add_subcommand("frenet", "Frenet apparatus of a curve at one parameter");
  frenet->add_option("curve,--curve", f_curve, "curve as (x(t), y(t), z(t))")->required();
  frenet->add_option("-t,--t,--at", f_t, "parameter value")->capture_default_str();
  frenet->callback([&] {
    name = "frenet";
    job = [&] { return cmd_frenet(f_curve, f_t); };
  });

  // surface
  SurfaceOptions so;
  RangeArg s_ur{"0:2*pi"}, s_lr{"-1:1"};
  auto* surface = app.add_subcommand("surface", "Tessellate a ruled surface of a curve into OBJ");
  surface->add_option("curve,--curve", so.curve, "curve as (x(t), y(t), z(t))")->required();
  surface->add_option("--kind", so.kind, "curvature-axis or tangent-dev")->capture_default_str();
  add_range(surface, "--u-range", s_ur, "curve parameter range");
  add_range(surface, "--lambda-range", s_lr, "ruling parameter range");
  surface->add_option("--nu", so.nu, "samples along the curve")->capture_default_str();
  surface->add_option("--nl", so.nl, "samples along each ruling")->capture_default_str();
  surface->add_option("-o,--out", so.out, "OBJ output path")->capture_default_str();
  surface->add_option("--csv", so.csv, "optional CSV of grid samples");
  surface->callback([&] {
    name = "surface";
    job = [&] {
      so.u_range = s_ur.get();
      so.lambda_range = s_lr.get();
      return cmd_surface(so);
    };
  });

  // classify
  std::string c_curve;
  RangeArg c_ur{"0:2*pi"};
  int c_samples = 64;
  double c_tol = 1e-6;
  auto* classify = app.add_subcommand("classify", "Classify the curvature-axis surface of a curve");
  classify->add_option("curve,--curve", c_curve, "curve as (x(t), y(t), z(t))")->required();
  add_range(classify, "--u-range", c_ur, "curve parameter range");
  classify->add_option("--samples", c_samples, "rulings sampled")->capture_default_str();
  classify->add_option("--tol", c_tol, "relative tolerance")->capture_default_str();
  classify->callback([&] {
    name = "classify";
    job = [&] { return cmd_classify(c_curve, c_ur.get(), c_samples, c_tol); };
  });

  // invert
  InvertOptions io;
  RangeArg i_range{"0:4*pi"};
  std::vector<double> i_consts{1, 1, 1, 0, 1, 0};
  auto* invert = app.add_subcommand("invert", "Recover a generating curve from a regression curve x(s)");
  invert->add_option("curve,--curve,--x-curve", io.x_curve, "regression curve as (x(s), y(s), z(s))")->required();
  invert->add_option("--kappa", io.kappa, "constant curvature of the generating curve")->capture_default_str();
  invert->add_option("--constants", i_consts, "c11 c12 c21 c22 c31 c32")->expected(6)->capture_default_str();
  add_range(invert, "--range", i_range, "arc-length range");
  invert->add_option("--samples", io.samples, "CSV rows")->capture_default_str();
  invert->add_option("-o,--out", io.out, "CSV output path")->capture_default_str();
  invert->callback([&] {
    name = "invert";
    job = [&] {
      std::copy(i_consts.begin(), i_consts.end(), io.constants.begin());
      io.range = i_range.get();
      return cmd_invert(io);
    };
  });

  // singular
  std::string g_curve;
  RangeArg g_range{"0:2*pi"};
  int g_grid = kDefaultSingularGrid;
  double g_tol = kTolSing;
  auto* singular = app.add_subcommand("singular", "Singular points of a curve and its surfaces");
  singular->add_option("curve,--curve", g_curve, "curve as (x(t), y(t), z(t))")->required();
  add_range(singular, "--range", g_range, "parameter range");
  singular->add_option("--grid", g_grid, "scan grid size")->capture_default_str();
  singular->add_option("--tol-sing", g_tol, "singularity tolerance")->capture_default_str();
  singular->callback([&] {
    name = "singular";
    job = [&] { return cmd_singular(g_curve, g_range.get(), g_grid, g_tol); };
  });

  // example
  std::string e_name, e_dir = "out";
  auto* example = app.add_subcommand("example", "Reproduce a worked example into a directory");
  example->add_option("name,--name", e_name, "helix, twisted, asteroid or nephroid")->required();
  example->add_option("-o,--out-dir,--out", e_dir, "output directory")->capture_default_str();
  example->callback([&] {
    name = "example";
    job = [&] { return cmd_example(e_name, e_dir); };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  const CommandResult r = run_command(name, job);
  std::cout << r.json.dump(2) << '\n';
  return r.exit_code;
}
