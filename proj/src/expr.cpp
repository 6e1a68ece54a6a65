#include "helixkit/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <unordered_map>
#include <unordered_set>

namespace helixkit {

struct Expression::Node {
  Kind kind = Kind::Constant;
  double value = 0.0;  // constant value, or the exponent of a Pow node
  int var = 0;
  std::string name;
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Kind;

NodePtr make_constant(double v) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = Kind::Constant;
  n->value = v;
  return n;
}

NodePtr make_node(Kind k, NodePtr a, NodePtr b = nullptr, double value = 0.0) {
  auto n = std::make_shared<Expression::Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  n->value = value;
  return n;
}

bool is_const(const NodePtr& n, double v) { return n->kind == Kind::Constant && n->value == v; }
bool is_const(const NodePtr& n) { return n->kind == Kind::Constant; }

const char* function_name(Kind k) {
  switch (k) {
    case Kind::Sin: return "sin";
    case Kind::Cos: return "cos";
    case Kind::Tan: return "tan";
    case Kind::Exp: return "exp";
    case Kind::Log: return "log";
    case Kind::Sqrt: return "sqrt";
    default: return "?";
  }
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string render(const NodePtr& n) {
  switch (n->kind) {
    case Kind::Constant:
      return n->value < 0 ? "(" + format_number(n->value) + ")" : format_number(n->value);
    case Kind::Variable: return n->name;
    case Kind::Add: return "(" + render(n->a) + " + " + render(n->b) + ")";
    case Kind::Sub: return "(" + render(n->a) + " - " + render(n->b) + ")";
    case Kind::Mul: return "(" + render(n->a) + " * " + render(n->b) + ")";
    case Kind::Div: return "(" + render(n->a) + " / " + render(n->b) + ")";
    case Kind::Pow: return "(" + render(n->a) + "^(" + format_number(n->value) + "))";
    case Kind::Neg: return "(-" + render(n->a) + ")";
    default: return std::string(function_name(n->kind)) + "(" + render(n->a) + ")";
  }
}

[[noreturn]] void domain_fail(const char* what, const NodePtr& n) { throw DomainError(what, render(n)); }

double pow_checked(double base, double p, const NodePtr& n) {
  if (base < 0 && std::floor(p) != p) domain_fail("negative base with non-integer exponent", n);
  if (base == 0 && p < 0) domain_fail("zero raised to a negative power", n);
  return std::pow(base, p);
}

double eval(const NodePtr& n, std::span<const double> args) {
  double r = 0.0;
  switch (n->kind) {
    case Kind::Constant: return n->value;
    case Kind::Variable:
      if (n->var < 0 || static_cast<std::size_t>(n->var) >= args.size())
        throw std::invalid_argument("no value supplied for variable " + n->name);
      return args[n->var];
    case Kind::Add: r = eval(n->a, args) + eval(n->b, args); break;
    case Kind::Sub: r = eval(n->a, args) - eval(n->b, args); break;
    case Kind::Mul: r = eval(n->a, args) * eval(n->b, args); break;
    case Kind::Div: {
      const double num = eval(n->a, args);
      const double den = eval(n->b, args);
      if (den == 0.0) domain_fail("division by zero", n);
      r = num / den;
      break;
    }
    case Kind::Pow: r = pow_checked(eval(n->a, args), n->value, n); break;
    case Kind::Neg: r = -eval(n->a, args); break;
    case Kind::Sin: r = std::sin(eval(n->a, args)); break;
    case Kind::Cos: r = std::cos(eval(n->a, args)); break;
    case Kind::Tan: {
      const double x = eval(n->a, args);
      if (std::abs(std::cos(x)) <= 1e-15) domain_fail("tan singularity", n);
      r = std::tan(x);
      break;
    }
    case Kind::Exp: r = std::exp(eval(n->a, args)); break;
    case Kind::Log: {
      const double x = eval(n->a, args);
      if (!(x > 0.0)) domain_fail("log of non-positive argument", n);
      r = std::log(x);
      break;
    }
    case Kind::Sqrt: {
      const double x = eval(n->a, args);
      if (x < 0.0) domain_fail("sqrt of negative argument", n);
      r = std::sqrt(x);
      break;
    }
  }
  if (!std::isfinite(r)) domain_fail("non-finite value", n);
  return r;
}

// Constructors with light folding: constant-only subtrees collapse, and
// additive zeros / multiplicative ones vanish.

NodePtr fold_or(Kind k, NodePtr a, NodePtr b, double value = 0.0) {
  auto n = make_node(k, std::move(a), std::move(b), value);
  const bool all_const = is_const(n->a) && (!n->b || is_const(n->b));
  if (!all_const) return n;
  try {
    return make_constant(eval(n, {}));
  } catch (const DomainError&) {
    return n;  // keep it; evaluation reports the singularity
  }
}

NodePtr add(NodePtr a, NodePtr b) {
  if (is_const(a, 0.0)) return b;
  if (is_const(b, 0.0)) return a;
  return fold_or(Kind::Add, std::move(a), std::move(b));
}

NodePtr neg(NodePtr a) {
  if (is_const(a)) return make_constant(-a->value);
  return make_node(Kind::Neg, std::move(a));
}

NodePtr sub(NodePtr a, NodePtr b) {
  if (is_const(b, 0.0)) return a;
  if (is_const(a, 0.0)) return neg(std::move(b));
  return fold_or(Kind::Sub, std::move(a), std::move(b));
}

NodePtr mul(NodePtr a, NodePtr b) {
  if (is_const(a, 0.0) || is_const(b, 0.0)) return make_constant(0.0);
  if (is_const(a, 1.0)) return b;
  if (is_const(b, 1.0)) return a;
  if (is_const(a, -1.0)) return neg(std::move(b));
  if (is_const(b, -1.0)) return neg(std::move(a));
  return fold_or(Kind::Mul, std::move(a), std::move(b));
}

NodePtr div(NodePtr a, NodePtr b) {
  if (is_const(b, 1.0)) return a;
  if (is_const(a, 0.0) && !is_const(b, 0.0)) return make_constant(0.0);
  return fold_or(Kind::Div, std::move(a), std::move(b));
}

NodePtr power(NodePtr a, double p) {
  if (p == 0.0) return make_constant(1.0);
  if (p == 1.0) return a;
  return fold_or(Kind::Pow, std::move(a), nullptr, p);
}

NodePtr func(Kind k, NodePtr a) { return fold_or(k, std::move(a), nullptr); }

class Differentiator {
 public:
  explicit Differentiator(int var) : var_(var) {}

  NodePtr operator()(const NodePtr& n) {
    if (auto it = memo_.find(n.get()); it != memo_.end()) return it->second;
    NodePtr d = compute(n);
    memo_.emplace(n.get(), d);
    return d;
  }

 private:
  NodePtr compute(const NodePtr& n) {
    switch (n->kind) {
      case Kind::Constant: return make_constant(0.0);
      case Kind::Variable: return make_constant(n->var == var_ ? 1.0 : 0.0);
      case Kind::Add: return add((*this)(n->a), (*this)(n->b));
      case Kind::Sub: return sub((*this)(n->a), (*this)(n->b));
      case Kind::Mul: return add(mul((*this)(n->a), n->b), mul(n->a, (*this)(n->b)));
      case Kind::Div: {
        NodePtr da = (*this)(n->a);
        NodePtr db = (*this)(n->b);
        if (is_const(db, 0.0)) return div(da, n->b);
        return div(sub(mul(da, n->b), mul(n->a, db)), power(n->b, 2.0));
      }
      case Kind::Pow:
        return mul(mul(make_constant(n->value), power(n->a, n->value - 1.0)), (*this)(n->a));
      case Kind::Neg: return neg((*this)(n->a));
      case Kind::Sin: return mul(func(Kind::Cos, n->a), (*this)(n->a));
      case Kind::Cos: return neg(mul(func(Kind::Sin, n->a), (*this)(n->a)));
      case Kind::Tan: return div((*this)(n->a), power(func(Kind::Cos, n->a), 2.0));
      case Kind::Exp: return mul(n, (*this)(n->a));
      case Kind::Log: return div((*this)(n->a), n->a);
      case Kind::Sqrt: return div((*this)(n->a), mul(make_constant(2.0), n));
    }
    return make_constant(0.0);
  }

  int var_;
  std::unordered_map<const Expression::Node*, NodePtr> memo_;
};

class Parser {
 public:
  Parser(std::string_view src, const std::vector<std::string>& vars) : src_(src), vars_(vars) {}

  NodePtr run() {
    NodePtr e = expr();
    skip_ws();
    if (pos_ != src_.size()) throw ParseError("unexpected trailing input", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_);
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = add(lhs, term());
      else if (accept('-'))
        lhs = sub(lhs, term());
      else
        return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = factor();
    for (;;) {
      if (accept('*'))
        lhs = mul(lhs, factor());
      else if (accept('/'))
        lhs = div(lhs, factor());
      else
        return lhs;
    }
  }

  NodePtr factor() {
    if (accept('-')) return neg(factor());
    NodePtr b = base();
    if (accept('^')) {
      skip_ws();
      const std::size_t at = pos_;
      NodePtr p = factor();
      if (!is_const(p)) throw ParseError("non-constant exponent", at);
      return power(b, p->value);
    }
    return b;
  }

  NodePtr base() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (accept('(')) {
      NodePtr e = expr();
      expect(')');
      return e;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  NodePtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_, ++n;
      return n;
    };
    std::size_t n = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) throw ParseError("malformed number", start);
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;
    }
    const std::string text(src_.substr(start, pos_ - start));
    return make_constant(std::strtod(text.c_str(), nullptr));
  }

  NodePtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    const std::string id(src_.substr(start, pos_ - start));
    static const std::pair<const char*, Kind> functions[] = {
        {"sin", Kind::Sin}, {"cos", Kind::Cos}, {"tan", Kind::Tan},
        {"exp", Kind::Exp}, {"log", Kind::Log}, {"sqrt", Kind::Sqrt}};
    for (const auto& [fname, kind] : functions) {
      if (id == fname) {
        expect('(');
        NodePtr arg = expr();
        expect(')');
        return func(kind, arg);
      }
    }
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (id == vars_[i]) {
        auto n = std::make_shared<Expression::Node>();
        n->kind = Kind::Variable;
        n->var = static_cast<int>(i);
        n->name = id;
        return n;
      }
    }
    if (id == "pi") return make_constant(M_PI);
    throw ParseError("unknown identifier '" + id + "'", start);
  }

  std::string_view src_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression::Expression() : node_(make_constant(0.0)) {}

Expression Expression::constant(double value) { return Expression(make_constant(value)); }

Expression Expression::variable(int index, std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->var = index;
  n->name = std::move(name);
  return Expression(std::move(n));
}

Expression::Kind Expression::kind() const { return node_->kind; }
double Expression::constant_value() const { return node_->value; }

double Expression::evaluate(double s) const { return eval(node_, std::span<const double>(&s, 1)); }
double Expression::evaluate(std::span<const double> args) const { return eval(node_, args); }

Expression Expression::derivative(int var) const { return Expression(Differentiator(var)(node_)); }

std::string Expression::to_string() const { return render(node_); }

std::size_t Expression::node_count() const {
  std::unordered_set<const Node*> seen;
  std::vector<const Node*> stack{node_.get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (!n || !seen.insert(n).second) continue;
    stack.push_back(n->a.get());
    stack.push_back(n->b.get());
  }
  return seen.size();
}

Expression operator+(const Expression& a, const Expression& b) { return Expression(add(a.node_, b.node_)); }
Expression operator-(const Expression& a, const Expression& b) { return Expression(sub(a.node_, b.node_)); }
Expression operator*(const Expression& a, const Expression& b) { return Expression(mul(a.node_, b.node_)); }
Expression operator/(const Expression& a, const Expression& b) { return Expression(div(a.node_, b.node_)); }
Expression operator-(const Expression& a) { return Expression(neg(a.node_)); }
Expression pow(const Expression& base, double exponent) { return Expression(power(base.node_, exponent)); }
Expression apply(Expression::Kind fn, const Expression& arg) { return Expression(func(fn, arg.node_)); }

Expression sin(const Expression& e) { return apply(Expression::Kind::Sin, e); }
Expression cos(const Expression& e) { return apply(Expression::Kind::Cos, e); }
Expression tan(const Expression& e) { return apply(Expression::Kind::Tan, e); }
Expression exp(const Expression& e) { return apply(Expression::Kind::Exp, e); }
Expression log(const Expression& e) { return apply(Expression::Kind::Log, e); }
Expression sqrt(const Expression& e) { return apply(Expression::Kind::Sqrt, e); }

Expression parse(std::string_view source, const std::vector<std::string>& variables) {
  return Expression(Parser(source, variables).run());
}

}  // namespace helixkit
