#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace helixkit {

/// Raised by parse() for malformed input. offset() is the byte offset of the
/// offending token in the source text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// Raised by evaluate() when a node is singular at the requested point
/// (log/sqrt of a bad argument, tan at an odd multiple of pi/2, division by 0).
class DomainError : public std::runtime_error {
 public:
  DomainError(const std::string& what, std::string node)
      : std::runtime_error(what + " in `" + node + "`"), node_(std::move(node)) {}
  const std::string& node() const noexcept { return node_; }

 private:
  std::string node_;
};

/// Immutable expression tree over one or more real variables.
///
/// Nodes are shared between trees (derivatives reuse the subtrees of the
/// original), so copying an Expression is cheap and evaluation from several
/// threads at once is safe.
class Expression {
 public:
  enum class Kind { Constant, Variable, Add, Sub, Mul, Div, Pow, Neg, Sin, Cos, Tan, Exp, Log, Sqrt };

  struct Node;

  Expression();  // the constant 0

  static Expression constant(double value);
  static Expression variable(int index, std::string name);

  Kind kind() const;
  bool is_constant() const { return kind() == Kind::Constant; }
  /// Value of a Constant node. Only meaningful when is_constant().
  double constant_value() const;

  double evaluate(double s) const;
  double evaluate(std::span<const double> args) const;

  /// Exact symbolic derivative with respect to variable `var`.
  Expression derivative(int var = 0) const;

  /// Fully parenthesized text that parse() maps back to an equivalent tree.
  std::string to_string() const;

  /// Number of distinct nodes reachable from the root.
  std::size_t node_count() const;

  friend Expression operator+(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a, const Expression& b);
  friend Expression operator*(const Expression& a, const Expression& b);
  friend Expression operator/(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a);
  friend Expression pow(const Expression& base, double exponent);
  friend Expression apply(Expression::Kind fn, const Expression& arg);
  friend Expression parse(std::string_view source, const std::vector<std::string>& variables);

 private:
  explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Expression sin(const Expression& e);
Expression cos(const Expression& e);
Expression tan(const Expression& e);
Expression exp(const Expression& e);
Expression log(const Expression& e);
Expression sqrt(const Expression& e);

/// Parses `source` with the grammar
///
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | base ('^' factor)?
///   base   := NUMBER | VAR | FUNC '(' expr ')' | '(' expr ')'
///
/// `^` is right-associative and its exponent must fold to a constant.
/// VAR is one of `variables` (index = position in the list); the identifier
/// `pi` is the constant π unless it names a variable.
Expression parse(std::string_view source, const std::vector<std::string>& variables = {"s"});

inline Expression differentiate(const Expression& e, int var = 0) { return e.derivative(var); }
inline double evaluate(const Expression& e, double s) { return e.evaluate(s); }

}  // namespace helixkit
