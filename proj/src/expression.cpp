#include "fracnoether/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "fracnoether/errors.hpp"
#include "fracnoether/gamma.hpp"

namespace fracnoether::expr {

enum class Kind { kConst, kVar, kNeg, kAdd, kSub, kMul, kDiv, kPow, kCall };
enum class Function { kGamma, kSqrt, kExp, kLog, kSin, kCos };

struct Node {
  Kind kind = Kind::kConst;
  double value = 0.0;
  std::size_t index = 0;
  Function function = Function::kGamma;
  std::shared_ptr<const Node> a;
  std::shared_ptr<const Node> b;
};

namespace {

using Ptr = std::shared_ptr<const Node>;

const std::map<std::string, Function>& functions() {
  static const std::map<std::string, Function> table = {
      {"gamma", Function::kGamma}, {"sqrt", Function::kSqrt}, {"exp", Function::kExp},
      {"log", Function::kLog},     {"sin", Function::kSin},   {"cos", Function::kCos},
  };
  return table;
}

const char* function_name(Function f) {
  for (const auto& [name, fn] : functions()) {
    if (fn == f) return name.c_str();
  }
  return "?";
}

double apply(Function f, double x) {
  switch (f) {
    case Function::kGamma: return gamma(x);
    case Function::kSqrt: return std::sqrt(x);
    case Function::kExp: return std::exp(x);
    case Function::kLog: return std::log(x);
    case Function::kSin: return std::sin(x);
    case Function::kCos: return std::cos(x);
  }
  return 0.0;
}

double eval(const Node& n, std::span<const double> values) {
  switch (n.kind) {
    case Kind::kConst: return n.value;
    case Kind::kVar: return values[n.index];
    case Kind::kNeg: return -eval(*n.a, values);
    case Kind::kAdd: return eval(*n.a, values) + eval(*n.b, values);
    case Kind::kSub: return eval(*n.a, values) - eval(*n.b, values);
    case Kind::kMul: return eval(*n.a, values) * eval(*n.b, values);
    case Kind::kDiv: return eval(*n.a, values) / eval(*n.b, values);
    case Kind::kPow: return std::pow(eval(*n.a, values), eval(*n.b, values));
    case Kind::kCall: return apply(n.function, eval(*n.a, values));
  }
  return 0.0;
}

bool is_const(const Ptr& p) { return p->kind == Kind::kConst; }
bool is_value(const Ptr& p, double v) { return is_const(p) && p->value == v; }

Ptr constant_node(double v) {
  auto n = std::make_shared<Node>();
  n->value = v;
  return n;
}

Ptr var_node(std::size_t index) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kVar;
  n->index = index;
  return n;
}

Ptr binary(Kind kind, Ptr a, Ptr b) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  n->a = std::move(a);
  n->b = std::move(b);
  if (is_const(n->a) && is_const(n->b)) return constant_node(eval(*n, {}));
  return n;
}

Ptr neg(Ptr a) {
  if (is_const(a)) return constant_node(-a->value);
  if (a->kind == Kind::kNeg) return a->a;
  auto n = std::make_shared<Node>();
  n->kind = Kind::kNeg;
  n->a = std::move(a);
  return n;
}

Ptr add(Ptr a, Ptr b) {
  if (is_value(a, 0.0)) return b;
  if (is_value(b, 0.0)) return a;
  return binary(Kind::kAdd, std::move(a), std::move(b));
}

Ptr sub(Ptr a, Ptr b) {
  if (is_value(b, 0.0)) return a;
  if (is_value(a, 0.0)) return neg(std::move(b));
  return binary(Kind::kSub, std::move(a), std::move(b));
}

Ptr mul(Ptr a, Ptr b) {
  if (is_value(a, 0.0) || is_value(b, 0.0)) return constant_node(0.0);
  if (is_value(a, 1.0)) return b;
  if (is_value(b, 1.0)) return a;
  return binary(Kind::kMul, std::move(a), std::move(b));
}

Ptr div(Ptr a, Ptr b) {
  if (is_value(b, 1.0)) return a;
  if (is_value(a, 0.0) && !is_value(b, 0.0)) return constant_node(0.0);
  if (is_value(b, 0.0)) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::kDiv;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }
  return binary(Kind::kDiv, std::move(a), std::move(b));
}

Ptr pow_node(Ptr a, Ptr b) {
  if (is_value(b, 1.0)) return a;
  if (is_value(b, 0.0)) return constant_node(1.0);
  return binary(Kind::kPow, std::move(a), std::move(b));
}

Ptr call(Function f, Ptr a) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::kCall;
  n->function = f;
  n->a = std::move(a);
  if (is_const(n->a)) {
    try {
      const double v = apply(f, n->a->value);
      if (std::isfinite(v)) return constant_node(v);
    } catch (const PoleError&) {
    }
  }
  return n;
}

bool depends(const Ptr& p, std::size_t index) {
  switch (p->kind) {
    case Kind::kConst: return false;
    case Kind::kVar: return p->index == index;
    case Kind::kNeg:
    case Kind::kCall: return depends(p->a, index);
    default: return depends(p->a, index) || depends(p->b, index);
  }
}

bool has_variables(const Ptr& p) {
  switch (p->kind) {
    case Kind::kConst: return false;
    case Kind::kVar: return true;
    case Kind::kNeg:
    case Kind::kCall: return has_variables(p->a);
    default: return has_variables(p->a) || has_variables(p->b);
  }
}

struct NotDifferentiable {};

Ptr differentiate(const Ptr& p, std::size_t index) {
  if (!depends(p, index)) return constant_node(0.0);
  const Ptr& a = p->a;
  const Ptr& b = p->b;
  switch (p->kind) {
    case Kind::kConst: return constant_node(0.0);
    case Kind::kVar: return constant_node(1.0);
    case Kind::kNeg: return neg(differentiate(a, index));
    case Kind::kAdd: return add(differentiate(a, index), differentiate(b, index));
    case Kind::kSub: return sub(differentiate(a, index), differentiate(b, index));
    case Kind::kMul: return add(mul(differentiate(a, index), b), mul(a, differentiate(b, index)));
    case Kind::kDiv:
      return div(sub(mul(differentiate(a, index), b), mul(a, differentiate(b, index))), mul(b, b));
    case Kind::kPow:
      if (!depends(b, index)) {
        return mul(mul(b, pow_node(a, sub(b, constant_node(1.0)))), differentiate(a, index));
      }
      return mul(p, add(mul(differentiate(b, index), call(Function::kLog, a)),
                        div(mul(b, differentiate(a, index)), a)));
    case Kind::kCall: {
      const Ptr da = differentiate(a, index);
      switch (p->function) {
        case Function::kGamma: throw NotDifferentiable{};
        case Function::kSqrt: return div(da, mul(constant_node(2.0), p));
        case Function::kExp: return mul(p, da);
        case Function::kLog: return div(da, a);
        case Function::kSin: return mul(call(Function::kCos, a), da);
        case Function::kCos: return neg(mul(call(Function::kSin, a), da));
      }
    }
  }
  return constant_node(0.0);
}

void print(const Ptr& p, const std::vector<std::string>* names, std::ostringstream& out) {
  switch (p->kind) {
    case Kind::kConst: {
      char buf[32];
      const auto res = std::to_chars(buf, buf + sizeof(buf), p->value);
      out << std::string(buf, res.ptr);
      return;
    }
    case Kind::kVar:
      if (names != nullptr && p->index < names->size()) {
        out << (*names)[p->index];
      } else {
        out << "x" << p->index;
      }
      return;
    case Kind::kNeg:
      out << "(-";
      print(p->a, names, out);
      out << ")";
      return;
    case Kind::kCall:
      out << function_name(p->function) << "(";
      print(p->a, names, out);
      out << ")";
      return;
    default: {
      const char* op = p->kind == Kind::kAdd ? " + "
                       : p->kind == Kind::kSub ? " - "
                       : p->kind == Kind::kMul ? "*"
                       : p->kind == Kind::kDiv ? "/"
                                               : "^";
      out << "(";
      print(p->a, names, out);
      out << op;
      print(p->b, names, out);
      out << ")";
    }
  }
}

class Parser {
 public:
  Parser(const std::string& text, const std::vector<std::string>& variables,
         const std::map<std::string, double>& constants)
      : text_(text), variables_(variables), constants_(constants) {}

  Ptr run() {
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty expression", pos_);
    Ptr root = expression();
    skip_space();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return root;
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= text_.size()) throw ParseError(std::string("expected '") + c + "' before end of input", pos_);
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  Ptr expression() {
    Ptr lhs = term();
    while (true) {
      if (accept('+')) {
        lhs = add(lhs, term());
      } else if (accept('-')) {
        lhs = sub(lhs, term());
      } else {
        return lhs;
      }
    }
  }

  Ptr term() {
    Ptr lhs = unary();
    while (true) {
      if (accept('*')) {
        lhs = mul(lhs, unary());
      } else if (accept('/')) {
        lhs = div(lhs, unary());
      } else {
        return lhs;
      }
    }
  }

  Ptr unary() {
    if (accept('-')) return neg(unary());
    if (accept('+')) return unary();
    return power();
  }

  Ptr power() {
    Ptr base = primary();
    if (accept('^')) return pow_node(base, unary());
    return base;
  }

  Ptr primary() {
    skip_space();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Ptr inner = expression();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  Ptr number() {
    const std::size_t start = pos_;
    double v = 0.0;
    const auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
    if (res.ec != std::errc()) throw ParseError("malformed number", start);
    pos_ = static_cast<std::size_t>(res.ptr - text_.data());
    return constant_node(v);
  }

  Ptr name() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string id = text_.substr(start, pos_ - start);
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      const auto fn = functions().find(id);
      if (fn == functions().end()) throw ParseError("unknown function '" + id + "'", start);
      ++pos_;
      Ptr arg = expression();
      expect(')');
      return call(fn->second, arg);
    }
    for (std::size_t i = 0; i < variables_.size(); ++i) {
      if (variables_[i] == id) return var_node(i);
    }
    if (const auto it = constants_.find(id); it != constants_.end()) return constant_node(it->second);
    if (functions().count(id) > 0) throw ParseError("function '" + id + "' needs an argument", start);
    throw ParseError("unknown variable '" + id + "'", start);
  }

  const std::string& text_;
  const std::vector<std::string>& variables_;
  const std::map<std::string, double>& constants_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression Expression::parse(const std::string& text, const std::vector<std::string>& variables,
                             const std::map<std::string, double>& constants) {
  return Expression(Parser(text, variables, constants).run());
}

Expression Expression::constant(double value) { return Expression(constant_node(value)); }

double Expression::evaluate(std::span<const double> values) const { return eval(*root_, values); }

std::optional<Expression> Expression::derivative(std::size_t index) const {
  try {
    return Expression(differentiate(root_, index));
  } catch (const NotDifferentiable&) {
    return std::nullopt;
  }
}

bool Expression::depends_on(std::size_t index) const { return depends(root_, index); }

bool Expression::is_constant() const { return !has_variables(root_); }

std::string Expression::to_string() const {
  std::ostringstream out;
  print(root_, nullptr, out);
  return out.str();
}

}  // namespace fracnoether::expr
