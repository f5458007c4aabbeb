#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <variant>

#include "devsurf/curve.hpp"
#include "support/random_expr.hpp"

using namespace devsurf;

namespace {

const ast::IntPower* as_int_power(const Expr& e) { return std::get_if<ast::IntPower>(&e.node().v); }

}  // namespace

TEST(ParseCurve, HelixSmoke) {
  const CurveDef c = parse_curve("(cos(t), sin(t), t)");
  EXPECT_EQ(c.parameter_name, 't');
  EXPECT_EQ(c.source_text, "(cos(t), sin(t), t)");
  const Point3 p = c.point(0.0);
  EXPECT_EQ(p, Point3(1.0, 0.0, 0.0));
}

TEST(ParseCurve, MonomialsBecomeIntegerPowers) {
  const CurveDef c = parse_curve("(t^2, t^3, t^4)");
  for (int i = 0; i < 3; ++i) {
    const auto* ip = as_int_power(c.components[i]);
    ASSERT_NE(ip, nullptr) << i;
    EXPECT_EQ(ip->exponent, i + 2);
    EXPECT_TRUE(std::holds_alternative<ast::Param>(ip->base.node().v));
  }
}

TEST(ParseCurve, WrongArity) {
  EXPECT_THROW(parse_curve("(cos(t), sin(t))"), ArityError);
  EXPECT_THROW(parse_curve("(t, t, t, t)"), ArityError);
}

TEST(ParseCurve, Errors) {
  EXPECT_THROW(parse_curve("(cos(t), sin(t)"), ParseError);
  EXPECT_THROW(parse_curve("(2t, t, t)"), ParseError);          // no implicit multiplication
  EXPECT_THROW(parse_curve("(t, s, t)"), ParseError);           // mixed parameter names
  EXPECT_THROW(parse_curve("(foo(t), t, t)"), ParseError);
  EXPECT_THROW(parse_curve("(t\xc2\xb2, t, t)"), ParseError);  // unicode superscript
  EXPECT_THROW(parse_curve("(t, t, t) x"), ParseError);
  EXPECT_THROW(parse_curve("(1e999, t, t)"), ParseError);
  try {
    parse_curve("(t, t +, t)");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 7u);
  }
}

TEST(ParseCurve, ParameterS) {
  const CurveDef c = parse_curve("(cos(s), sin(s), s)");
  EXPECT_EQ(c.parameter_name, 's');
  EXPECT_DOUBLE_EQ(c.point(2.0).z, 2.0);
}

TEST(ParseCurve, Precedence) {
  // '^' binds tighter than unary minus and is right-associative.
  EXPECT_DOUBLE_EQ(eval_expr(parse_expr("-t^2"), 3.0), -9.0);
  EXPECT_DOUBLE_EQ(eval_expr(parse_expr("2^3^2"), 0.0), 512.0);
  EXPECT_DOUBLE_EQ(eval_expr(parse_expr("1 - 2 - 3"), 0.0), -4.0);
  EXPECT_DOUBLE_EQ(eval_expr(parse_expr("8 / 4 / 2"), 0.0), 1.0);
  EXPECT_DOUBLE_EQ(eval_expr(parse_expr("2 * e"), 0.0), 2.0 * std::numbers::e);
  EXPECT_DOUBLE_EQ(eval_expr(parse_expr("2e1"), 0.0), 20.0);
  EXPECT_DOUBLE_EQ(eval_expr(parse_expr("t^-2"), 2.0), 0.25);
  ASSERT_NE(as_int_power(parse_expr("t^-2")), nullptr);
}

TEST(EvalExpr, Examples) {
  EXPECT_EQ(eval_expr(parse_expr("sin(t)"), 0.0), 0.0);
  EXPECT_NEAR(eval_expr(parse_expr("cos(2*t)"), std::numbers::pi / 2), -1.0, 1e-15);
  EXPECT_NEAR(eval_expr(parse_expr("3/4*cos(t) - 1/4*cos(3*t)"), 0.0), 0.5, 1e-15);
}

TEST(EvalExpr, DomainErrors) {
  EXPECT_THROW(eval_expr(parse_expr("sqrt(t)"), -1.0), DomainError);
  EXPECT_THROW(eval_expr(parse_expr("log(t)"), 0.0), DomainError);
  EXPECT_THROW(eval_expr(parse_expr("1/t"), 0.0), DomainError);
  try {
    eval_expr(parse_expr("1 + log(t - 2)"), 1.0);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.node(), "log((t-2))");
    EXPECT_EQ(e.value(), -1.0);
  }
  EXPECT_EQ(eval_expr(parse_expr("sqrt(t)"), 0.0), 0.0);
}

TEST(FormatCurve, RoundTripExamples) {
  for (const char* text : {"(cos(t)^3, sin(t)^3, cos(2*t))",
                           "(3/4*cos(t) - 1/4*cos(3*t), 3/4*sin(t) - 1/4*sin(3*t), sqrt(3)/2*cos(t))",
                           "(-t^2, 2^t^0.5, -(-t))", "(0.1, 1e-7, abs(s))"}) {
    const CurveDef c = parse_curve(text);
    const CurveDef again = parse_curve(format_curve(c));
    EXPECT_TRUE(same_structure(c, again)) << text << " -> " << format_curve(c);
  }
}

// parse(format(parse(s))) == parse(s), and evaluation against an independent
// reference, on a random corpus.
TEST(EvalExpr, RandomCorpusAgainstReference) {
  oracle::ExprGenerator gen(20240611);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> tdist(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const auto re = gen.make(3);
    const Expr e = parse_expr(re.text);
    EXPECT_EQ(parse_expr(format_expr(e)), e) << re.text;
    for (int j = 0; j < 20; ++j) {
      const double t = tdist(rng);
      const double want = re.tree->eval<double>(t);
      const double got = eval_expr(e, t);
      EXPECT_NEAR(got, want, 1e-14 * std::max(1.0, std::abs(want))) << re.text << " at " << t;
    }
  }
}
