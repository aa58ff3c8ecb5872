#pragma once

// A small arithmetic expression language over the single variable x.
//
//   expr    := term (("+" | "-") term)*
//   term    := unary (("*" | "/") unary)*
//   unary   := "-" unary | power
//   power   := atom ("^" unary)?          right-associative
//   atom    := NUMBER | "x" | IDENT "(" expr ")" | "(" expr ")"
//
// IDENT is one of sin, cos, exp, log, sqrt, abs. Exponentiation binds tighter
// than negation, so "-x^2" is -(x^2) while "2^-1" is still accepted.

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <type_traits>
#include <utility>
#include <variant>

#include "ostrowski/dual.hpp"
#include "ostrowski/error.hpp"

namespace ostrowski {

enum class Func { Sin, Cos, Exp, Log, Sqrt, Abs };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

inline constexpr std::array<std::pair<std::string_view, Func>, 6> kFunctions{{
    {"sin", Func::Sin},
    {"cos", Func::Cos},
    {"exp", Func::Exp},
    {"log", Func::Log},
    {"sqrt", Func::Sqrt},
    {"abs", Func::Abs},
}};

inline std::string_view name_of(Func f) {
  for (const auto& [name, func] : kFunctions)
    if (func == f) return name;
  return "?";
}

inline std::optional<Func> lookup_function(std::string_view name) {
  for (const auto& [n, func] : kFunctions)
    if (n == name) return func;
  return std::nullopt;
}

inline char symbol_of(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return '+';
    case BinaryOp::Sub: return '-';
    case BinaryOp::Mul: return '*';
    case BinaryOp::Div: return '/';
    case BinaryOp::Pow: return '^';
  }
  return '?';
}

struct ExprNode;

/// Immutable expression tree. Copies share structure.
class Expr {
 public:
  static Expr constant(double value);
  static Expr variable();
  static Expr negate(Expr operand);
  static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
  static Expr apply(Func func, Expr arg);

  const ExprNode& node() const { return *node_; }

 private:
  explicit Expr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
  std::shared_ptr<const ExprNode> node_;
};

struct Constant {
  double value;
};
struct Variable {};
struct Negate {
  Expr operand;
};
struct Binary {
  BinaryOp op;
  Expr lhs;
  Expr rhs;
};
struct Apply {
  Func func;
  Expr arg;
};

struct ExprNode : std::variant<Constant, Variable, Negate, Binary, Apply> {
  using variant::variant;
};

inline Expr Expr::constant(double value) {
  return Expr(std::make_shared<const ExprNode>(Constant{value}));
}
inline Expr Expr::variable() { return Expr(std::make_shared<const ExprNode>(Variable{})); }
inline Expr Expr::negate(Expr operand) {
  return Expr(std::make_shared<const ExprNode>(Negate{std::move(operand)}));
}
inline Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
  return Expr(std::make_shared<const ExprNode>(Binary{op, std::move(lhs), std::move(rhs)}));
}
inline Expr Expr::apply(Func func, Expr arg) {
  return Expr(std::make_shared<const ExprNode>(Apply{func, std::move(arg)}));
}

/// Structural equality.
inline bool operator==(const Expr& lhs, const Expr& rhs) {
  const ExprNode& l = lhs.node();
  const ExprNode& r = rhs.node();
  if (&l == &r) return true;
  if (l.index() != r.index()) return false;
  if (const auto* c = std::get_if<Constant>(&l)) return c->value == std::get<Constant>(r).value;
  if (std::holds_alternative<Variable>(l)) return true;
  if (const auto* n = std::get_if<Negate>(&l)) return n->operand == std::get<Negate>(r).operand;
  if (const auto* b = std::get_if<Binary>(&l)) {
    const auto& rb = std::get<Binary>(r);
    return b->op == rb.op && b->lhs == rb.lhs && b->rhs == rb.rhs;
  }
  const auto& a = std::get<Apply>(l);
  const auto& ra = std::get<Apply>(r);
  return a.func == ra.func && a.arg == ra.arg;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse() {
    skip_ws();
    if (pos_ == text_.size())
      throw ParseError(ParseError::Kind::Syntax, pos_, "empty expression");
    Expr e = parse_expr();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError(ParseError::Kind::Syntax, pos_,
                       std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ == text_.size())
        throw ParseError(ParseError::Kind::Syntax, pos_,
                         std::string("expected '") + c + "' before end of input");
      throw ParseError(ParseError::Kind::Syntax, pos_,
                       std::string("expected '") + c + "', found '" + text_[pos_] + "'");
    }
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+'))
        lhs = Expr::binary(BinaryOp::Add, lhs, parse_term());
      else if (accept('-'))
        lhs = Expr::binary(BinaryOp::Sub, lhs, parse_term());
      else
        return lhs;
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*'))
        lhs = Expr::binary(BinaryOp::Mul, lhs, parse_unary());
      else if (accept('/'))
        lhs = Expr::binary(BinaryOp::Div, lhs, parse_unary());
      else
        return lhs;
    }
  }

  Expr parse_unary() {
    if (accept('-')) return Expr::negate(parse_unary());
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (accept('^')) return Expr::binary(BinaryOp::Pow, base, parse_unary());
    return base;
  }

  Expr parse_atom() {
    skip_ws();
    if (pos_ == text_.size())
      throw ParseError(ParseError::Kind::Syntax, pos_, "unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
    throw ParseError(ParseError::Kind::Syntax, pos_, std::string("unexpected '") + c + "'");
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) throw ParseError(ParseError::Kind::Syntax, start, "malformed number");
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) throw ParseError(ParseError::Kind::Syntax, pos_, "malformed exponent");
    }
    double value = 0.0;
    const char* first = text_.data() + start;
    const char* last = text_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec == std::errc::result_out_of_range)
      throw ParseError(ParseError::Kind::Syntax, start, "number out of range");
    if (ec != std::errc() || ptr != last)
      throw ParseError(ParseError::Kind::Syntax, start, "malformed number");
    return Expr::constant(value);
  }

  Expr parse_identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "x") return Expr::variable();

    const auto func = lookup_function(name);
    if (!func)
      throw ParseError(ParseError::Kind::UnknownIdentifier, start,
                       "unknown identifier '" + std::string(name) + "'");
    const std::string fname(name);
    if (!accept('('))
      throw ParseError(ParseError::Kind::Arity, pos_,
                       "function '" + fname + "' expects 1 parenthesized argument");
    if (accept(')'))
      throw ParseError(ParseError::Kind::Arity, pos_ - 1,
                       "function '" + fname + "' expects 1 argument, got 0");
    Expr arg = parse_expr();
    if (accept(','))
      throw ParseError(ParseError::Kind::Arity, pos_ - 1,
                       "function '" + fname + "' expects 1 argument, got more");
    expect(')');
    return Expr::apply(*func, arg);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Expr parse(std::string_view text) { return detail::Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Serialization

namespace detail {

inline void format_number(std::string& out, double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

inline void serialize_into(std::string& out, const Expr& e) {
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Constant>) {
          if (std::signbit(n.value)) {
            out += "(-";
            format_number(out, -n.value);
            out += ')';
          } else {
            format_number(out, n.value);
          }
        } else if constexpr (std::is_same_v<T, Variable>) {
          out += 'x';
        } else if constexpr (std::is_same_v<T, Negate>) {
          out += "(-";
          serialize_into(out, n.operand);
          out += ')';
        } else if constexpr (std::is_same_v<T, Binary>) {
          out += '(';
          serialize_into(out, n.lhs);
          out += symbol_of(n.op);
          serialize_into(out, n.rhs);
          out += ')';
        } else {
          out += name_of(n.func);
          out += '(';
          serialize_into(out, n.arg);
          out += ')';
        }
      },
      static_cast<const ExprNode::variant&>(e.node()));
}

}  // namespace detail

/// Fully parenthesized text that parses back to the same tree, provided every
/// constant is non-negative (which holds for any tree produced by parse()).
inline std::string serialize(const Expr& e) {
  std::string out;
  detail::serialize_into(out, e);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace detail {

template <class Scalar>
double value_of(const Scalar& s) {
  if constexpr (std::is_same_v<Scalar, DualValue>)
    return s.value;
  else
    return s;
}

template <class Scalar>
Scalar checked(Scalar s, double x) {
  if (!std::isfinite(value_of(s)))
    throw DomainError("expression is not finite at x = " + std::to_string(x));
  if constexpr (std::is_same_v<Scalar, DualValue>) {
    if (!std::isfinite(s.derivative))
      throw NonDifferentiableError(x, "derivative is not finite at x = " + std::to_string(x));
  }
  return s;
}

template <class Scalar>
Scalar evaluate(const Expr& e, const Scalar& var, double x) {
  constexpr bool kDual = std::is_same_v<Scalar, DualValue>;
  using std::abs, std::cos, std::exp, std::log, std::pow, std::sin, std::sqrt;

  return std::visit(
      [&](const auto& n) -> Scalar {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return Scalar(n.value);
        } else if constexpr (std::is_same_v<T, Variable>) {
          return var;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return -evaluate(n.operand, var, x);
        } else if constexpr (std::is_same_v<T, Binary>) {
          const Scalar l = evaluate(n.lhs, var, x);
          const Scalar r = evaluate(n.rhs, var, x);
          switch (n.op) {
            case BinaryOp::Add: return checked(l + r, x);
            case BinaryOp::Sub: return checked(l - r, x);
            case BinaryOp::Mul: return checked(l * r, x);
            case BinaryOp::Div:
              if (value_of(r) == 0.0) throw DomainError("division by zero at x = " + std::to_string(x));
              return checked(l / r, x);
            case BinaryOp::Pow: {
              const double base = value_of(l);
              const double expo = value_of(r);
              if (base == 0.0 && expo < 0.0)
                throw DomainError("0 raised to a negative power at x = " + std::to_string(x));
              if (base < 0.0 && expo != std::trunc(expo))
                throw DomainError("negative base with non-integer exponent at x = " +
                                  std::to_string(x));
              if constexpr (kDual) {
                if (r.derivative != 0.0 && base <= 0.0)
                  throw NonDifferentiableError(
                      x, "variable exponent over non-positive base at x = " + std::to_string(x));
              }
              return checked(pow(l, r), x);
            }
          }
          throw DomainError("unknown operator");
        } else {
          const Scalar u = evaluate(n.arg, var, x);
          const double v = value_of(u);
          switch (n.func) {
            case Func::Sin: return checked(sin(u), x);
            case Func::Cos: return checked(cos(u), x);
            case Func::Exp: return checked(exp(u), x);
            case Func::Log:
              if (v <= 0.0) throw DomainError("log of non-positive value at x = " + std::to_string(x));
              return checked(log(u), x);
            case Func::Sqrt:
              if (v < 0.0) throw DomainError("sqrt of negative value at x = " + std::to_string(x));
              if constexpr (kDual) {
                if (v == 0.0) throw NonDifferentiableError(x, "sqrt(0) at x = " + std::to_string(x));
              }
              return checked(sqrt(u), x);
            case Func::Abs:
              if constexpr (kDual) {
                if (v == 0.0)
                  throw NonDifferentiableError(x, "abs of zero at x = " + std::to_string(x));
              }
              return checked(abs(u), x);
          }
          throw DomainError("unknown function");
        }
      },
      static_cast<const ExprNode::variant&>(e.node()));
}

}  // namespace detail

/// f(x). Throws DomainError outside the domain of any sub-expression.
inline double eval(const Expr& e, double x) { return detail::evaluate<double>(e, x, x); }

/// (f(x), f'(x)) by forward-mode differentiation. Throws
/// NonDifferentiableError at kinks (abs of zero, sqrt of zero, infinite slope).
inline DualValue eval_dual(const Expr& e, double x) {
  return detail::evaluate<DualValue>(e, DualValue::variable(x), x);
}

}  // namespace ostrowski
