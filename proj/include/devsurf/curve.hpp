#pragma once

#include <array>
#include <string>
#include <string_view>

#include "expr.hpp"
#include "jet.hpp"
#include "vec3.hpp"

namespace devsurf {

template <int N = kJetOrder>
using JetVec3 = Vec3<Jet<N>>;

/// A parametric space curve: three expressions in one parameter (t or s).
struct CurveDef {
  std::array<Expr, 3> components;
  char parameter_name = 't';
  std::string source_text;

  template <class S>
  Vec3<S> evaluate(const S& t) const {
    return {devsurf::evaluate(components[0], t, parameter_name),
            devsurf::evaluate(components[1], t, parameter_name),
            devsurf::evaluate(components[2], t, parameter_name)};
  }

  Point3 point(double t) const { return evaluate<double>(t); }

  /// Value and derivatives up to order N of every component at t.
  template <int N = kJetOrder>
  JetVec3<N> jet(double t) const {
    return evaluate(Jet<N>::variable(t));
  }
};

inline CurveDef parse_curve(std::string_view text) {
  detail::Parser parser(text);
  auto comps = parser.parse_tuple();
  if (comps.size() != 3) throw ArityError(comps.size());
  CurveDef c;
  for (int i = 0; i < 3; ++i) c.components[i] = std::move(comps[i]);
  c.parameter_name = parser.param_name().value_or('t');
  c.source_text = std::string(text);
  return c;
}

inline std::string format_curve(const CurveDef& c) {
  return "(" + format_expr(c.components[0], c.parameter_name) + ", " +
         format_expr(c.components[1], c.parameter_name) + ", " +
         format_expr(c.components[2], c.parameter_name) + ")";
}

template <int N = kJetOrder>
JetVec3<N> eval_jet(const CurveDef& c, double t) {
  return c.jet<N>(t);
}

/// Structural equality of the component trees and parameter name.
inline bool same_structure(const CurveDef& a, const CurveDef& b) {
  return a.parameter_name == b.parameter_name && a.components == b.components;
}

}  // namespace devsurf
