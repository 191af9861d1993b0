#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>

#include "curve.hpp"
#include "error.hpp"

namespace rotor::expr {

enum class Op { Const, Var, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Tan, Exp, Ln, Sqrt };

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
  Op op = Op::Const;
  double value = 0;             // Const
  std::int64_t num = 0, den = 1;  // Pow exponent num/den, den > 0, reduced
  Expr a, b;
};

inline bool is_function(Op op) {
  return op == Op::Sin || op == Op::Cos || op == Op::Tan || op == Op::Exp || op == Op::Ln || op == Op::Sqrt;
}

inline const char* function_name(Op op) {
  switch (op) {
    case Op::Sin: return "sin";
    case Op::Cos: return "cos";
    case Op::Tan: return "tan";
    case Op::Exp: return "exp";
    case Op::Ln: return "ln";
    case Op::Sqrt: return "sqrt";
    default: return "";
  }
}

// Constructors with constant folding.

inline Expr constant(double v) { return std::make_shared<const Node>(Node{Op::Const, v, 0, 1, {}, {}}); }
inline Expr variable() { return std::make_shared<const Node>(Node{Op::Var, 0, 0, 1, {}, {}}); }

inline bool is_const(const Expr& e, double v) { return e->op == Op::Const && e->value == v; }
inline bool is_const(const Expr& e) { return e->op == Op::Const; }

inline Expr raw(Op op, Expr a, Expr b = nullptr) {
  return std::make_shared<const Node>(Node{op, 0, 0, 1, std::move(a), std::move(b)});
}

inline Expr add(Expr a, Expr b) {
  if (is_const(a) && is_const(b)) return constant(a->value + b->value);
  if (is_const(a, 0)) return b;
  if (is_const(b, 0)) return a;
  return raw(Op::Add, a, b);
}

inline Expr neg(Expr a) {
  if (is_const(a)) return constant(-a->value);
  if (a->op == Op::Neg) return a->a;
  return raw(Op::Neg, a);
}

inline Expr sub(Expr a, Expr b) {
  if (is_const(a) && is_const(b)) return constant(a->value - b->value);
  if (is_const(b, 0)) return a;
  if (is_const(a, 0)) return neg(b);
  return raw(Op::Sub, a, b);
}

inline Expr mul(Expr a, Expr b) {
  if (is_const(a) && is_const(b)) return constant(a->value * b->value);
  if (is_const(a, 0) || is_const(b, 0)) return constant(0);
  if (is_const(a, 1)) return b;
  if (is_const(b, 1)) return a;
  return raw(Op::Mul, a, b);
}

inline Expr div(Expr a, Expr b) {
  if (is_const(a) && is_const(b) && b->value != 0) return constant(a->value / b->value);
  if (is_const(a, 0)) return constant(0);
  if (is_const(b, 1)) return a;
  return raw(Op::Div, a, b);
}

inline Expr pow(Expr a, std::int64_t num, std::int64_t den) {
  if (den < 0) num = -num, den = -den;
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) num /= g, den /= g;
  if (num == 0) return constant(1);
  if (num == 1 && den == 1) return a;
  return std::make_shared<const Node>(Node{Op::Pow, 0, num, den, a, nullptr});
}

inline Expr apply(Op fn, Expr a) { return raw(fn, a); }

// Evaluation

namespace detail {
[[noreturn]] inline void domain(double t, const std::string& what) {
  throw PointError(ErrorKind::EvalDomain, t, what + " at t=" + std::to_string(t));
}

inline double rational_pow(double x, std::int64_t num, std::int64_t den, double t) {
  if (x == 0 && num < 0) domain(t, "zero to a negative power");
  if (den == 1) return std::pow(x, static_cast<double>(num));
  double p = static_cast<double>(num) / static_cast<double>(den);
  if (x >= 0) return std::pow(x, p);
  if (den % 2 == 0) domain(t, "even root of a negative number");
  double m = std::pow(-x, p);
  return (num % 2 == 0) ? m : -m;
}
}  // namespace detail

inline double evaluate(const Expr& e, double t) {
  double r = 0;
  switch (e->op) {
    case Op::Const: return e->value;
    case Op::Var: return t;
    case Op::Add: r = evaluate(e->a, t) + evaluate(e->b, t); break;
    case Op::Sub: r = evaluate(e->a, t) - evaluate(e->b, t); break;
    case Op::Mul: r = evaluate(e->a, t) * evaluate(e->b, t); break;
    case Op::Div: {
      double d = evaluate(e->b, t);
      if (d == 0) detail::domain(t, "division by zero");
      r = evaluate(e->a, t) / d;
      break;
    }
    case Op::Pow: r = detail::rational_pow(evaluate(e->a, t), e->num, e->den, t); break;
    case Op::Neg: r = -evaluate(e->a, t); break;
    case Op::Sin: r = std::sin(evaluate(e->a, t)); break;
    case Op::Cos: r = std::cos(evaluate(e->a, t)); break;
    case Op::Tan: r = std::tan(evaluate(e->a, t)); break;
    case Op::Exp: r = std::exp(evaluate(e->a, t)); break;
    case Op::Ln: {
      double x = evaluate(e->a, t);
      if (!(x > 0)) detail::domain(t, "ln of a non-positive number");
      r = std::log(x);
      break;
    }
    case Op::Sqrt: {
      double x = evaluate(e->a, t);
      if (x < 0) detail::domain(t, "sqrt of a negative number");
      r = std::sqrt(x);
      break;
    }
  }
  if (!std::isfinite(r)) detail::domain(t, "non-finite result");
  return r;
}

// Symbolic derivative with respect to t.
inline Expr differentiate(const Expr& e) {
  const Expr& u = e->a;
  switch (e->op) {
    case Op::Const: return constant(0);
    case Op::Var: return constant(1);
    case Op::Add: return add(differentiate(e->a), differentiate(e->b));
    case Op::Sub: return sub(differentiate(e->a), differentiate(e->b));
    case Op::Mul: return add(mul(differentiate(e->a), e->b), mul(e->a, differentiate(e->b)));
    case Op::Div:
      return div(sub(mul(differentiate(e->a), e->b), mul(e->a, differentiate(e->b))), pow(e->b, 2, 1));
    case Op::Pow:
      return mul(mul(constant(static_cast<double>(e->num) / static_cast<double>(e->den)),
                     pow(u, e->num - e->den, e->den)),
                 differentiate(u));
    case Op::Neg: return neg(differentiate(u));
    case Op::Sin: return mul(apply(Op::Cos, u), differentiate(u));
    case Op::Cos: return neg(mul(apply(Op::Sin, u), differentiate(u)));
    case Op::Tan: return mul(differentiate(u), pow(apply(Op::Cos, u), -2, 1));
    case Op::Exp: return mul(e, differentiate(u));
    case Op::Ln: return div(differentiate(u), u);
    case Op::Sqrt: return div(differentiate(u), mul(constant(2), e));
  }
  return constant(0);
}

inline bool equal(const Expr& x, const Expr& y) {
  if (!x || !y) return !x && !y;
  if (x->op != y->op) return false;
  if (x->op == Op::Const) return x->value == y->value;
  if (x->op == Op::Pow && (x->num != y->num || x->den != y->den)) return false;
  return equal(x->a, y->a) && equal(x->b, y->b);
}

// Fully parenthesized text that parses back to the same tree.
inline std::string to_string(const Expr& e) {
  auto bin = [&](const char* op) { return "(" + to_string(e->a) + op + to_string(e->b) + ")"; };
  switch (e->op) {
    case Op::Const: {
      char buf[64];
      auto res = std::to_chars(buf, buf + sizeof buf, e->value);
      std::string s(buf, res.ptr);
      return e->value < 0 ? "(" + s + ")" : s;
    }
    case Op::Var: return "t";
    case Op::Add: return bin("+");
    case Op::Sub: return bin("-");
    case Op::Mul: return bin("*");
    case Op::Div: return bin("/");
    case Op::Neg: return "(-" + to_string(e->a) + ")";
    case Op::Pow: {
      std::string ex = std::to_string(e->num);
      if (e->den != 1) ex += "/" + std::to_string(e->den);
      if (e->den != 1 || e->num < 0) ex = "(" + ex + ")";
      return "(" + to_string(e->a) + "^" + ex + ")";
    }
    default: return std::string(function_name(e->op)) + "(" + to_string(e->a) + ")";
  }
}

inline std::size_t node_count(const Expr& e) {
  if (!e) return 0;
  return 1 + node_count(e->a) + node_count(e->b);
}

// Parsing

inline constexpr std::size_t kMaxExprBytes = 64 * 1024;

class Parser {
 public:
  explicit Parser(std::string_view text) : s_(text) {}

  Expr parse() {
    if (s_.empty()) syntax("empty expression");
    if (s_.size() > kMaxExprBytes) syntax("expression longer than 64 KiB");
    Expr e = expression();
    skip();
    if (i_ != s_.size()) syntax("unexpected '" + std::string(1, s_[i_]) + "'");
    return e;
  }

 private:
  struct Rational {
    std::int64_t num, den;
  };

  [[noreturn]] void syntax(const std::string& what) const {
    fail(ErrorKind::SyntaxError, what + " at byte " + std::to_string(i_));
  }

  void skip() {
    while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\n' || s_[i_] == '\r')) ++i_;
  }

  bool accept(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) syntax(std::string("expected '") + c + "'");
  }

  struct Depth {
    Parser& p;
    explicit Depth(Parser& parser) : p(parser) {
      if (++p.depth_ > 512) p.syntax("nesting too deep");
    }
    ~Depth() { --p.depth_; }
  };

  Expr expression() {
    Depth guard(*this);
    Expr e = term();
    for (;;) {
      if (accept('+')) e = raw(Op::Add, e, term());
      else if (accept('-')) e = raw(Op::Sub, e, term());
      else return e;
    }
  }

  Expr term() {
    Expr e = unary();
    for (;;) {
      if (accept('*')) e = raw(Op::Mul, e, unary());
      else if (accept('/')) e = raw(Op::Div, e, unary());
      else return e;
    }
  }

  Expr unary() {
    Depth guard(*this);
    if (accept('-')) return raw(Op::Neg, unary());
    if (accept('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!accept('^')) return base;
    Rational r = exponent();
    if (r.num == 0) syntax("zero exponent");
    std::int64_t g = std::gcd(r.num < 0 ? -r.num : r.num, r.den);
    return std::make_shared<const Node>(Node{Op::Pow, 0, r.num / g, r.den / g, base, nullptr});
  }

  // Exponent: [+-]number | ( [+-]number [/ [+-]number] ), right-associative among literals.
  Rational exponent() {
    Rational r{};
    if (accept('(')) {
      bool minus = sign();
      r = number_rational();
      if (minus) r.num = -r.num;
      if (accept('/')) {
        bool m2 = sign();
        Rational d = number_rational();
        if (d.num == 0) syntax("zero denominator in exponent");
        if (m2) d.num = -d.num;
        r = {r.num * d.den, r.den * d.num};
      }
      expect(')');
    } else {
      bool minus = sign();
      r = number_rational();
      if (minus) r.num = -r.num;
    }
    if (r.den < 0) r = {-r.num, -r.den};
    if (accept('^')) {
      Rational up = exponent();
      if (up.den != 1) syntax("non-integer power of an exponent");
      Rational acc{1, 1};
      std::int64_t n = up.num < 0 ? -up.num : up.num;
      for (std::int64_t k = 0; k < n; ++k) {
        acc = {acc.num * r.num, acc.den * r.den};
        if (acc.num > (1LL << 40) || acc.num < -(1LL << 40) || acc.den > (1LL << 40)) syntax("exponent too large");
      }
      if (up.num < 0) {
        if (acc.num == 0) syntax("zero to a negative power in exponent");
        acc = {acc.den, acc.num};
        if (acc.den < 0) acc = {-acc.num, -acc.den};
      }
      r = acc;
    }
    std::int64_t g = std::gcd(r.num < 0 ? -r.num : r.num, r.den);
    if (g > 1) r = {r.num / g, r.den / g};
    return r;
  }

  bool sign() {
    if (accept('-')) return true;
    accept('+');
    return false;
  }

  std::size_t scan_number() {
    skip();
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ < s_.size() && s_[i_] == '.') {
      ++i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    if (i_ == start || (i_ == start + 1 && s_[start] == '.')) {
      i_ = start;
      syntax("expected a number");
    }
    if (i_ < s_.size() && (s_[i_] == 'e' || s_[i_] == 'E')) {
      std::size_t j = i_ + 1;
      if (j < s_.size() && (s_[j] == '+' || s_[j] == '-')) ++j;
      if (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) {
        while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
        i_ = j;
      }
    }
    return start;
  }

  double number_value() {
    std::size_t start = scan_number();
    double v = 0;
    auto res = std::from_chars(s_.data() + start, s_.data() + i_, v);
    if (res.ec != std::errc() || !std::isfinite(v)) syntax("bad number");
    return v;
  }

  // Exact decimal literal as a fraction.
  Rational number_rational() {
    std::size_t start = scan_number();
    std::string_view lit = s_.substr(start, i_ - start);
    std::int64_t num = 0, den = 1;
    int exp10 = 0;
    bool frac = false;
    std::size_t k = 0;
    for (; k < lit.size() && lit[k] != 'e' && lit[k] != 'E'; ++k) {
      if (lit[k] == '.') {
        frac = true;
        continue;
      }
      if (num > (1LL << 50)) syntax("exponent literal too long");
      num = num * 10 + (lit[k] - '0');
      if (frac) --exp10;
    }
    if (k < lit.size()) exp10 += std::stoi(std::string(lit.substr(k + 1)));
    if (exp10 > 12 || exp10 < -12) syntax("exponent literal out of range");
    for (; exp10 > 0; --exp10) num *= 10;
    for (; exp10 < 0; ++exp10) den *= 10;
    std::int64_t g = std::gcd(num, den);
    return {num / g, den / g};
  }

  Expr primary() {
    skip();
    if (i_ >= s_.size()) syntax("unexpected end of input");
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return constant(number_value());
    if (c == '(') {
      ++i_;
      Expr e = expression();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      std::string id(s_.substr(start, i_ - start));
      if (id == "t") return variable();
      if (id == "pi") return constant(std::numbers::pi);
      if (id == "e") return constant(std::numbers::e);
      static const std::pair<const char*, Op> fns[] = {{"sin", Op::Sin}, {"cos", Op::Cos}, {"tan", Op::Tan},
                                                       {"exp", Op::Exp}, {"ln", Op::Ln},   {"sqrt", Op::Sqrt}};
      for (const auto& [name, op] : fns) {
        if (id == name) {
          if (!accept('(')) syntax(id + " needs parentheses");
          Expr arg = expression();
          expect(')');
          return raw(op, arg);
        }
      }
      i_ = start;
      fail(ErrorKind::UnknownIdentifier, "'" + id + "' at byte " + std::to_string(start));
    }
    syntax("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t i_ = 0;
  int depth_ = 0;
};

inline Expr parse(std::string_view text) { return Parser(text).parse(); }

// Expression and its first three derivatives, evaluated together.
struct Jet {
  Expr f, d1, d2, d3;
  explicit Jet(Expr e) : f(std::move(e)) {
    d1 = differentiate(f);
    d2 = differentiate(d1);
    d3 = differentiate(d2);
  }
  const Expr& order(int k) const { return k == 0 ? f : k == 1 ? d1 : k == 2 ? d2 : d3; }
};

inline PlaneCurve make_expr_curve(const std::string& x, const std::string& y, double t0, double t1) {
  auto jx = std::make_shared<const Jet>(parse(x));
  auto jy = std::make_shared<const Jet>(parse(y));
  auto at = [jx, jy](int k) {
    return [jx, jy, k](double t) { return Vec2{evaluate(jx->order(k), t), evaluate(jy->order(k), t)}; };
  };
  return PlaneCurve(t0, t1, at(0), {at(1), at(2), at(3)});
}

inline SpaceCurve make_expr_curve(const std::string& x, const std::string& y, const std::string& z, double t0,
                                  double t1) {
  auto jx = std::make_shared<const Jet>(parse(x));
  auto jy = std::make_shared<const Jet>(parse(y));
  auto jz = std::make_shared<const Jet>(parse(z));
  auto at = [jx, jy, jz](int k) {
    return [jx, jy, jz, k](double t) {
      return Vec3{evaluate(jx->order(k), t), evaluate(jy->order(k), t), evaluate(jz->order(k), t)};
    };
  };
  return SpaceCurve(t0, t1, at(0), {at(1), at(2), at(3)});
}

}  // namespace rotor::expr
