#pragma once

// Small arithmetic expression language used by problem specification files.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := ('-' | '+') unary | power
//   power   := primary ('^' unary)?          right-associative; -x^2 = -(x^2)
//   primary := number | name | name '(' expr ')' | '(' expr ')'
//
// Functions: gamma, sqrt, exp, log, sin, cos. Names are either variables
// (bound to a slot index) or named constants substituted at parse time.

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fracnoether::expr {

struct Node;

class Expression {
 public:
  /// Throws ParseError for syntax errors, unknown names and unknown functions.
  static Expression parse(const std::string& text, const std::vector<std::string>& variables,
                          const std::map<std::string, double>& constants = {});
  static Expression constant(double value);

  /// `values[i]` is the value of variables[i] given to parse.
  double evaluate(std::span<const double> values) const;

  /// Symbolic partial derivative in variable slot `index`; nullopt when the
  /// expression uses gamma of a non-constant argument.
  std::optional<Expression> derivative(std::size_t index) const;

  bool depends_on(std::size_t index) const;
  bool is_constant() const;
  std::string to_string() const;

 private:
  explicit Expression(std::shared_ptr<const Node> root) : root_(std::move(root)) {}
  std::shared_ptr<const Node> root_;
};

}  // namespace fracnoether::expr
