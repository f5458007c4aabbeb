#pragma once

// Expression trees for the curve definition language, with a precedence
// climbing parser, a canonical formatter and an evaluator that is generic
// over the scalar (double or Jet<N>).
//
//   curve  = "(" expr "," expr "," expr ")"
//   expr   = term { ("+"|"-") term }
//   term   = factor { ("*"|"/") factor }
//   factor = ["-"] power
//   power  = atom [ "^" factor ]
//   atom   = number | ident | ident "(" expr ")" | "(" expr ")"

#include <cctype>
#include <charconv>
#include <cmath>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "jet.hpp"

namespace devsurf {

enum class Func { Neg, Sin, Cos, Tan, Sqrt, Exp, Log, Abs };
enum class BinOp { Add, Sub, Mul, Div, Pow };
enum class NamedConstant { Pi, E };

class Expr;

namespace ast {

struct Number {
  double value;
  bool operator==(const Number&) const = default;
};
struct Param {
  bool operator==(const Param&) const = default;
};
struct Constant {
  NamedConstant which;
  bool operator==(const Constant&) const = default;
};
struct Unary;
struct Binary;
struct IntPower;

}  // namespace ast

/// Immutable, cheaply copyable handle to an expression tree.
class Expr {
 public:
  struct Node;

  Expr() = default;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static Expr number(double v);
  static Expr param();
  static Expr constant(NamedConstant c);
  static Expr unary(Func f, Expr child);
  static Expr binary(BinOp op, Expr lhs, Expr rhs);
  static Expr int_power(Expr base, int exponent);

  const Node& node() const { return *node_; }
  bool empty() const { return !node_; }

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  std::shared_ptr<const Node> node_;
};

namespace ast {

struct Unary {
  Func func;
  Expr child;
  bool operator==(const Unary&) const = default;
};
struct Binary {
  BinOp op;
  Expr lhs, rhs;
  bool operator==(const Binary&) const = default;
};
struct IntPower {
  Expr base;
  int exponent;
  bool operator==(const IntPower&) const = default;
};

}  // namespace ast

struct Expr::Node {
  std::variant<ast::Number, ast::Param, ast::Constant, ast::Unary, ast::Binary, ast::IntPower> v;
};

inline bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  return a.node_->v == b.node_->v;
}

inline Expr Expr::number(double v) {
  return Expr(std::make_shared<const Node>(Node{ast::Number{v}}));
}
inline Expr Expr::param() { return Expr(std::make_shared<const Node>(Node{ast::Param{}})); }
inline Expr Expr::constant(NamedConstant c) {
  return Expr(std::make_shared<const Node>(Node{ast::Constant{c}}));
}
inline Expr Expr::unary(Func f, Expr child) {
  return Expr(std::make_shared<const Node>(Node{ast::Unary{f, std::move(child)}}));
}
inline Expr Expr::binary(BinOp op, Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const Node>(Node{ast::Binary{op, std::move(lhs), std::move(rhs)}}));
}
inline Expr Expr::int_power(Expr base, int exponent) {
  return Expr(std::make_shared<const Node>(Node{ast::IntPower{std::move(base), exponent}}));
}

// ---------------------------------------------------------------------------
// Formatting

inline const char* func_name(Func f) {
  switch (f) {
    case Func::Neg: return "-";
    case Func::Sin: return "sin";
    case Func::Cos: return "cos";
    case Func::Tan: return "tan";
    case Func::Sqrt: return "sqrt";
    case Func::Exp: return "exp";
    case Func::Log: return "log";
    case Func::Abs: return "abs";
  }
  return "?";
}

inline char op_char(BinOp op) {
  switch (op) {
    case BinOp::Add: return '+';
    case BinOp::Sub: return '-';
    case BinOp::Mul: return '*';
    case BinOp::Div: return '/';
    case BinOp::Pow: return '^';
  }
  return '?';
}

/// Shortest decimal string that parses back to the same double.
inline std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// Canonical text: every compound node is parenthesized, so the output
/// reparses to a structurally identical tree.
inline std::string format_expr(const Expr& e, char param_name = 't') {
  struct Visitor {
    char p;
    std::string operator()(const ast::Number& n) const { return format_number(n.value); }
    std::string operator()(const ast::Param&) const { return std::string(1, p); }
    std::string operator()(const ast::Constant& c) const {
      return c.which == NamedConstant::Pi ? "pi" : "e";
    }
    std::string operator()(const ast::Unary& u) const {
      if (u.func == Func::Neg) return "(-" + format_expr(u.child, p) + ")";
      return std::string(func_name(u.func)) + "(" + format_expr(u.child, p) + ")";
    }
    std::string operator()(const ast::Binary& b) const {
      return "(" + format_expr(b.lhs, p) + op_char(b.op) + format_expr(b.rhs, p) + ")";
    }
    std::string operator()(const ast::IntPower& ip) const {
      return "(" + format_expr(ip.base, p) + "^" + std::to_string(ip.exponent) + ")";
    }
  };
  return std::visit(Visitor{param_name}, e.node().v);
}

// ---------------------------------------------------------------------------
// Evaluation

namespace detail {

inline double apply(Func f, double x) {
  switch (f) {
    case Func::Neg: return -x;
    case Func::Sin: return std::sin(x);
    case Func::Cos: return std::cos(x);
    case Func::Tan: return std::tan(x);
    case Func::Sqrt: return std::sqrt(x);
    case Func::Exp: return std::exp(x);
    case Func::Log: return std::log(x);
    case Func::Abs: return std::abs(x);
  }
  return x;
}

template <int N>
Jet<N> apply(Func f, const Jet<N>& x) {
  switch (f) {
    case Func::Neg: return -x;
    case Func::Sin: return sin(x);
    case Func::Cos: return cos(x);
    case Func::Tan: return tan(x);
    case Func::Sqrt: return sqrt(x);
    case Func::Exp: return exp(x);
    case Func::Log: return log(x);
    case Func::Abs: return abs(x);
  }
  return x;
}

inline double int_pow(double x, int n) {
  if (n < 0) return 1.0 / int_pow(x, -n);
  double r = 1.0, b = x;
  while (n > 0) {
    if (n & 1) r *= b;
    n >>= 1;
    if (n > 0) b *= b;
  }
  return r;
}

template <int N>
Jet<N> int_pow(const Jet<N>& x, int n) {
  return pow(x, n);
}

inline double real_pow(double x, double y) { return std::pow(x, y); }

template <int N>
Jet<N> real_pow(const Jet<N>& x, const Jet<N>& y) {
  return pow(x, y);
}

// Checks the natural domain before applying, so the error names the node.
template <class S>
void check_domain(Func f, const S& arg, const Expr& node, char p) {
  const double v = value_of(arg);
  constexpr bool differentiated = jet_order<S> > 0;
  bool bad = false;
  switch (f) {
    case Func::Sqrt: bad = v < 0.0 || (differentiated && v == 0.0); break;
    case Func::Log: bad = !(v > 0.0); break;
    case Func::Abs: bad = differentiated && std::abs(v) < 1e-300; break;
    case Func::Tan: bad = std::cos(v) == 0.0; break;
    default: break;
  }
  if (bad || std::isnan(v)) throw DomainError(format_expr(node, p), v);
}

}  // namespace detail

/// Evaluates e at parameter value t. S is double or Jet<N>.
template <class S>
S evaluate(const Expr& e, const S& t, char param_name = 't') {
  const auto& v = e.node().v;
  if (auto* n = std::get_if<ast::Number>(&v)) return S(n->value);
  if (std::holds_alternative<ast::Param>(v)) return t;
  if (auto* c = std::get_if<ast::Constant>(&v))
    return S(c->which == NamedConstant::Pi ? std::numbers::pi : std::numbers::e);
  if (auto* u = std::get_if<ast::Unary>(&v)) {
    S arg = evaluate(u->child, t, param_name);
    detail::check_domain(u->func, arg, e, param_name);
    return detail::apply(u->func, arg);
  }
  if (auto* ip = std::get_if<ast::IntPower>(&v)) {
    S base = evaluate(ip->base, t, param_name);
    if (ip->exponent < 0 && value_of(base) == 0.0) throw DomainError(format_expr(e, param_name), 0.0);
    return detail::int_pow(base, ip->exponent);
  }
  const auto& b = std::get<ast::Binary>(v);
  S lhs = evaluate(b.lhs, t, param_name);
  S rhs = evaluate(b.rhs, t, param_name);
  switch (b.op) {
    case BinOp::Add: return lhs + rhs;
    case BinOp::Sub: return lhs - rhs;
    case BinOp::Mul: return lhs * rhs;
    case BinOp::Div:
      if (value_of(rhs) == 0.0) throw DomainError(format_expr(e, param_name), 0.0);
      return lhs / rhs;
    case BinOp::Pow:
      // 0^y is fine as a value for y > 0 but has no jet there.
      if (value_of(lhs) < 0.0 ||
          (value_of(lhs) == 0.0 && (jet_order<S> > 0 || !(value_of(rhs) > 0.0))))
        throw DomainError(format_expr(e, param_name), value_of(lhs));
      return detail::real_pow(lhs, rhs);
  }
  return lhs;
}

inline double eval_expr(const Expr& e, double t) { return evaluate<double>(e, t); }

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<Expr> parse_tuple() {
    expect('(', "'('");
    std::vector<Expr> comps;
    comps.push_back(parse_expr());
    while (peek() == ',') {
      ++pos_;
      comps.push_back(parse_expr());
    }
    expect(')', "',' or ')'");
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(pos_, "end of input");
    return comps;
  }

  Expr parse_single() {
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(pos_, "end of input");
    return e;
  }

  std::optional<char> param_name() const { return param_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::optional<char> param_;

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char c, const char* what) {
    if (peek() != c) throw ParseError(pos_, what);
    ++pos_;
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (char c = peek(); c == '+' || c == '-'; c = peek()) {
      ++pos_;
      Expr rhs = parse_term();
      lhs = Expr::binary(c == '+' ? BinOp::Add : BinOp::Sub, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr parse_term() {
    Expr lhs = parse_factor();
    for (char c = peek(); c == '*' || c == '/'; c = peek()) {
      ++pos_;
      Expr rhs = parse_factor();
      lhs = Expr::binary(c == '*' ? BinOp::Mul : BinOp::Div, std::move(lhs), std::move(rhs));
    }
    return lhs;
  }

  Expr parse_factor() {
    if (peek() == '-') {
      ++pos_;
      return Expr::unary(Func::Neg, parse_power());
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (peek() != '^') return base;
    ++pos_;
    Expr exponent = parse_factor();
    if (auto n = integer_literal(exponent)) return Expr::int_power(std::move(base), *n);
    return Expr::binary(BinOp::Pow, std::move(base), std::move(exponent));
  }

  // A literal integer, or the negation of one, becomes an integer power.
  static std::optional<int> integer_literal(const Expr& e) {
    const auto& v = e.node().v;
    int sign = 1;
    const Expr* inner = &e;
    if (auto* u = std::get_if<ast::Unary>(&v); u && u->func == Func::Neg) {
      sign = -1;
      inner = &u->child;
    }
    if (auto* n = std::get_if<ast::Number>(&inner->node().v)) {
      double x = n->value;
      if (x == std::floor(x) && std::abs(x) <= 1e6) return sign * static_cast<int>(x);
    }
    return std::nullopt;
  }

  Expr parse_atom() {
    char c = peek();
    if (c == '(') {
      ++pos_;
      Expr e = parse_expr();
      expect(')', "')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
    throw ParseError(pos_, "number, identifier or '('");
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_, ++n;
      return n;
    };
    std::size_t n = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) throw ParseError(start, "digits");
    // An exponent only when digits follow, so "2*e" keeps e as the constant.
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t q = pos_ + 1;
      if (q < text_.size() && (text_[q] == '+' || text_[q] == '-')) ++q;
      if (q < text_.size() && std::isdigit(static_cast<unsigned char>(text_[q]))) {
        pos_ = q;
        digits();
      }
    }
    double v = 0.0;
    auto res = std::from_chars(text_.data() + start, text_.data() + pos_, v);
    if (res.ec != std::errc() || res.ptr != text_.data() + pos_ || !std::isfinite(v))
      throw ParseError(start, "finite number");
    return Expr::number(v);
  }

  Expr parse_ident() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string_view id = text_.substr(start, pos_ - start);

    if (id == "t" || id == "s") {
      if (param_ && *param_ != id[0]) throw ParseError(start, std::string("parameter '") + *param_ + "'");
      param_ = id[0];
      return Expr::param();
    }
    if (id == "pi") return Expr::constant(NamedConstant::Pi);
    if (id == "e") return Expr::constant(NamedConstant::E);

    static constexpr std::pair<std::string_view, Func> kFuncs[] = {
        {"sin", Func::Sin},   {"cos", Func::Cos}, {"tan", Func::Tan}, {"sqrt", Func::Sqrt},
        {"exp", Func::Exp},   {"log", Func::Log}, {"abs", Func::Abs}};
    for (const auto& [name, f] : kFuncs) {
      if (id == name) {
        expect('(', "'(' after function name");
        Expr arg = parse_expr();
        expect(')', "')'");
        return Expr::unary(f, std::move(arg));
      }
    }
    throw ParseError(start, "known identifier (t, s, pi, e, sin, cos, tan, sqrt, exp, log, abs)");
  }
};

}  // namespace detail

/// Parses a single scalar expression (no tuple). The parameter may be t or s.
inline Expr parse_expr(std::string_view text) { return detail::Parser(text).parse_single(); }

}  // namespace devsurf
