#pragma once

/**
 * @file mesh.hpp
 * @brief Grid tessellation of ruled surfaces and the file formats around it:
 *        OBJ (v/vt/f), binary PPM circle texture, CSV samples.
 *
 * All writers produce byte-identical output for identical input.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"
#include "expr.hpp"
#include "interval.hpp"
#include "ruled.hpp"

namespace devsurf {

/// Triangles with area below kAreaEps * (bbox diagonal)^2 are dropped.
inline constexpr double kAreaEps = 1e-12;

struct Mesh {
  std::vector<Point3> vertices;
  std::vector<std::array<double, 2>> uvs;
  std::vector<std::array<int, 3>> triangles;
  int degenerate_skipped = 0;  // triangles dropped as degenerate or unevaluable
};

inline double triangle_area(const Point3& a, const Point3& b, const Point3& c) {
  return 0.5 * norm(cross(b - a, c - a));
}

/// nu x nl vertex grid, two triangles per cell. Vertices whose ruling fails to
/// evaluate are dropped together with the triangles that use them.
inline Mesh tessellate(const RuledSurface& S, Interval u_range, Interval lambda_range, int nu, int nl) {
  if (nu < 2 || nl < 2) throw InvalidArgument("tessellation needs nu >= 2 and nl >= 2");
  require_valid(u_range, "u range");
  require_valid(lambda_range, "lambda range");

  std::vector<std::optional<Point3>> grid(static_cast<std::size_t>(nu) * nl);
  auto at = [&](int i, int j) -> std::optional<Point3>& { return grid[static_cast<std::size_t>(i) * nl + j]; };
  Point3 lo{HUGE_VAL, HUGE_VAL, HUGE_VAL}, hi{-HUGE_VAL, -HUGE_VAL, -HUGE_VAL};
  for (int i = 0; i < nu; ++i) {
    const double u = u_range.sample(i, nu);
    Point3 x, y;
    try {
      x = values(S.base(u));
      y = values(S.director(u));
    } catch (const MathError&) {
      continue;
    }
    for (int j = 0; j < nl; ++j) {
      const Point3 p = x + lambda_range.sample(j, nl) * y;
      if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) continue;
      at(i, j) = p;
      for (int k = 0; k < 3; ++k) {
        lo[k] = std::min(lo[k], p[k]);
        hi[k] = std::max(hi[k], p[k]);
      }
    }
  }

  Mesh m;
  std::vector<int> index(grid.size(), -1);
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nl; ++j)
      if (at(i, j)) {
        index[static_cast<std::size_t>(i) * nl + j] = static_cast<int>(m.vertices.size());
        m.vertices.push_back(*at(i, j));
        m.uvs.push_back({static_cast<double>(i) / (nu - 1), static_cast<double>(j) / (nl - 1)});
      }
  if (m.vertices.empty()) throw EmptyMesh("no vertex of the surface could be evaluated");

  const double diag2 = norm2(hi - lo);
  const double min_area = kAreaEps * diag2;
  auto add = [&](int a, int b, int c) {
    if (a < 0 || b < 0 || c < 0 ||
        !(triangle_area(m.vertices[a], m.vertices[b], m.vertices[c]) > min_area)) {
      ++m.degenerate_skipped;
      return;
    }
    m.triangles.push_back({a, b, c});
  };
  for (int i = 0; i + 1 < nu; ++i)
    for (int j = 0; j + 1 < nl; ++j) {
      const int a = index[static_cast<std::size_t>(i) * nl + j];
      const int b = index[static_cast<std::size_t>(i + 1) * nl + j];
      const int c = index[static_cast<std::size_t>(i + 1) * nl + j + 1];
      const int d = index[static_cast<std::size_t>(i) * nl + j + 1];
      add(a, b, c);
      add(a, c, d);
    }
  if (m.triangles.empty()) throw EmptyMesh("every cell of the tessellation is degenerate");
  return m;
}

// ---------------------------------------------------------------------------
// Output

namespace detail {

inline void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw IoError("failed writing " + path);
}

/// Nine significant digits, as used by the CSV writers.
inline std::string fmt9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace detail

/// OBJ text. Coordinates use the shortest decimal that parses back to the
/// same double, so re-reading the file restores every vertex exactly.
inline std::string obj_string(const Mesh& m) {
  if (m.triangles.empty()) throw EmptyMesh("refusing to write a mesh without triangles");
  std::string s;
  s.reserve(m.vertices.size() * 64 + m.triangles.size() * 32);
  for (const Point3& p : m.vertices)
    s += "v " + format_number(p.x) + ' ' + format_number(p.y) + ' ' + format_number(p.z) + '\n';
  for (const auto& uv : m.uvs) s += "vt " + format_number(uv[0]) + ' ' + format_number(uv[1]) + '\n';
  for (const auto& t : m.triangles) {
    s += 'f';
    for (int k : t) {
      const std::string idx = std::to_string(k + 1);
      s += ' ' + idx + '/' + idx;
    }
    s += '\n';
  }
  return s;
}

inline void write_obj(const Mesh& m, const std::string& path) { detail::write_file(path, obj_string(m)); }

/// Binary PPM: black square with one white disc of radius 0.35 cell per grid
/// cell. A pixel is white when its center lies inside a disc.
inline std::string circle_texture(int n_cells, int resolution) {
  if (n_cells < 1) throw InvalidArgument("texture needs at least one cell");
  if (resolution < 16) throw InvalidArgument("texture resolution must be at least 16");
  const double cell = static_cast<double>(resolution) / n_cells;
  const double r2 = (0.35 * cell) * (0.35 * cell);
  std::string s = "P6\n" + std::to_string(resolution) + ' ' + std::to_string(resolution) + "\n255\n";
  const std::size_t header = s.size();
  s.resize(header + static_cast<std::size_t>(resolution) * resolution * 3, '\0');
  for (int y = 0; y < resolution; ++y)
    for (int x = 0; x < resolution; ++x) {
      const double px = x + 0.5, py = y + 0.5;
      const double cx = (std::floor(px / cell) + 0.5) * cell, cy = (std::floor(py / cell) + 0.5) * cell;
      if ((px - cx) * (px - cx) + (py - cy) * (py - cy) <= r2) {
        const std::size_t o = header + (static_cast<std::size_t>(y) * resolution + x) * 3;
        s[o] = s[o + 1] = s[o + 2] = static_cast<char>(255);
      }
    }
  return s;
}

inline void write_circle_texture(const std::string& path, int n_cells, int resolution) {
  detail::write_file(path, circle_texture(n_cells, resolution));
}

/// `u,lambda,x,y,z,residual` rows over the nu x nl grid; residual is the
/// developability residual of the ruling.
inline std::string surface_csv(const RuledSurface& S, Interval u_range, Interval lambda_range, int nu, int nl) {
  if (nu < 2 || nl < 2) throw InvalidArgument("sampling needs nu >= 2 and nl >= 2");
  std::ostringstream out;
  out << "u,lambda,x,y,z,residual\n";
  for (int i = 0; i < nu; ++i) {
    const double u = u_range.sample(i, nu);
    const double res = developability_residual(S, u);
    for (int j = 0; j < nl; ++j) {
      const double l = lambda_range.sample(j, nl);
      const Point3 p = eval_surface(S, u, l);
      out << detail::fmt9(u) << ',' << detail::fmt9(l) << ',' << detail::fmt9(p.x) << ',' << detail::fmt9(p.y) << ','
          << detail::fmt9(p.z) << ',' << detail::fmt9(res) << '\n';
    }
  }
  return out.str();
}

struct CurveSample {
  double s = 0.0;
  Point3 p;
  double residual = 0.0;
};

/// `s,x,y,z,residual` rows for a sampled curve.
inline std::string curve_csv(const std::vector<CurveSample>& rows) {
  std::ostringstream out;
  out << "s,x,y,z,residual\n";
  for (const auto& r : rows)
    out << detail::fmt9(r.s) << ',' << detail::fmt9(r.p.x) << ',' << detail::fmt9(r.p.y) << ',' << detail::fmt9(r.p.z)
        << ',' << detail::fmt9(r.residual) << '\n';
  return out.str();
}

inline void write_text(const std::string& path, const std::string& text) { detail::write_file(path, text); }

}  // namespace devsurf
