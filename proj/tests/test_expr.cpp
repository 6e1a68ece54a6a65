#include <cmath>
#include <functional>
#include <random>

#include <gtest/gtest.h>

#include "helixkit/expr.hpp"

using namespace helixkit;

namespace {

double at(const std::string& src, double s) { return parse(src).evaluate(s); }

// Random expressions in s that are defined on all of [-2, 2].
class RandomExpressions {
 public:
  explicit RandomExpressions(unsigned seed) : rng_(seed) {}

  Expression next(int depth = 4) {
    const Expression s = Expression::variable(0, "s");
    if (depth == 0 || pick(4) == 0) {
      if (pick(2) == 0) return s;
      return Expression::constant(std::round(uniform(-3, 3) * 8) / 8);
    }
    const Expression a = next(depth - 1);
    switch (pick(11)) {
      case 0: return a + next(depth - 1);
      case 1: return a - next(depth - 1);
      case 2: return a * next(depth - 1);
      case 3: return a / (Expression::constant(2.0) + sin(next(depth - 1)));
      case 4: return -a;
      case 5: return sin(a);
      case 6: return cos(a);
      case 7: return exp(sin(a));
      case 8: return sqrt(Expression::constant(1.0) + pow(a, 2.0));
      case 9: return log(Expression::constant(1.5) + cos(a));
      default: return pow(sin(a), 3.0);
    }
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }
  std::mt19937 rng_;
};

// Richardson-extrapolated central difference.
double numeric_derivative(const std::function<double(double)>& f, double x) {
  auto central = [&](double h) { return (f(x + h) - f(x - h)) / (2 * h); };
  const double h = 1e-3;
  return (4 * central(h / 2) - central(h)) / 3;
}

}  // namespace

TEST(Parse, ArithmeticAndPrecedence) {
  EXPECT_DOUBLE_EQ(at("1 + 2*3", 0), 7);
  EXPECT_DOUBLE_EQ(at("(1 + 2)*3", 0), 9);
  EXPECT_DOUBLE_EQ(at("8/4/2", 0), 1);
  EXPECT_DOUBLE_EQ(at("2^3^2", 0), 512);  // right associative
  EXPECT_DOUBLE_EQ(at("-2^2", 0), -4);    // ^ binds tighter than unary minus
  EXPECT_DOUBLE_EQ(at("2^-1", 0), 0.5);
  EXPECT_DOUBLE_EQ(at("--s", 3), 3);
  EXPECT_DOUBLE_EQ(at("1.5e2 + 2E-1", 0), 150.2);
  EXPECT_DOUBLE_EQ(at("s*s - 1", 4), 15);
}

TEST(Parse, FunctionsAndConstants) {
  EXPECT_NEAR(at("sin(s)^2 + cos(s)^2", 0.7), 1.0, 1e-15);
  EXPECT_NEAR(at("exp(log(s))", 2.5), 2.5, 1e-15);
  EXPECT_NEAR(at("sqrt(s)", 9), 3, 0);
  EXPECT_NEAR(at("tan(s)", 0.3), std::tan(0.3), 1e-16);
  EXPECT_NEAR(at("pi/3", 0), M_PI / 3, 1e-16);
  EXPECT_DOUBLE_EQ(parse("u*v + w", {"u", "v", "w"}).evaluate(std::vector<double>{2, 3, 4}), 10);
}

TEST(Parse, ConstantSubtreesFold) {
  EXPECT_TRUE(parse("2*3 + sin(0)").is_constant());
  EXPECT_DOUBLE_EQ(parse("2*3 + sin(0)").constant_value(), 6);
  EXPECT_EQ(parse("s*1 + 0").node_count(), 1u);
  // A constant subtree that is singular is kept, so the error surfaces at evaluation.
  EXPECT_THROW(parse("s + 1/0").evaluate(1.0), DomainError);
}

TEST(Parse, ErrorsCarryOffsets) {
  auto offset_of = [](const std::string& src) -> std::size_t {
    try {
      parse(src);
    } catch (const ParseError& e) {
      return e.offset();
    }
    ADD_FAILURE() << "no ParseError for " << src;
    return 0;
  };
  EXPECT_EQ(offset_of("1 + * 2"), 4u);
  EXPECT_EQ(offset_of("sin(s"), 5u);
  EXPECT_EQ(offset_of("foo(s)"), 0u);
  EXPECT_EQ(offset_of("s ^ s"), 4u);  // non-constant exponent
  EXPECT_EQ(offset_of("2 $ 3"), 2u);
  EXPECT_EQ(offset_of(""), 0u);
  EXPECT_EQ(offset_of("(s))"), 3u);
  EXPECT_THROW(parse("t + 1"), ParseError);
}

TEST(Evaluate, DomainErrorsNameTheNode) {
  EXPECT_THROW(at("log(s)", 0), DomainError);
  EXPECT_THROW(at("log(s)", -1), DomainError);
  EXPECT_THROW(at("sqrt(s)", -1e-3), DomainError);
  EXPECT_THROW(at("1/s", 0), DomainError);
  EXPECT_THROW(at("s^(-1)", 0), DomainError);
  EXPECT_THROW(at("s^0.5", -2), DomainError);
  EXPECT_THROW(at("tan(s)", M_PI / 2), DomainError);
  EXPECT_THROW(at("exp(s)", 1000), DomainError);
  try {
    at("1 + log(s)", -1);
  } catch (const DomainError& e) {
    EXPECT_NE(e.node().find("log"), std::string::npos);
  }
  EXPECT_DOUBLE_EQ(at("s^3", -2), -8);  // integer powers of negatives are fine
}

TEST(Derivative, KnownForms) {
  const double s = 0.37;
  EXPECT_NEAR(parse("sin(2*s)").derivative().evaluate(s), 2 * std::cos(2 * s), 1e-15);
  EXPECT_NEAR(parse("s^3").derivative().evaluate(s), 3 * s * s, 1e-15);
  EXPECT_NEAR(parse("1/s").derivative().evaluate(s), -1 / (s * s), 1e-13);
  EXPECT_NEAR(parse("tan(s)").derivative().evaluate(s), 1 / std::pow(std::cos(s), 2), 1e-14);
  EXPECT_NEAR(parse("sqrt(s)").derivative().evaluate(s), 0.5 / std::sqrt(s), 1e-15);
  EXPECT_NEAR(parse("log(s)").derivative().evaluate(s), 1 / s, 1e-15);
  EXPECT_NEAR(parse("exp(-s)").derivative().derivative().evaluate(s), std::exp(-s), 1e-15);
  EXPECT_TRUE(parse("3").derivative().is_constant());
  const Expression e = parse("u^2*v", {"u", "v"});
  EXPECT_DOUBLE_EQ(e.derivative(0).evaluate(std::vector<double>{2, 5}), 20);
  EXPECT_DOUBLE_EQ(e.derivative(1).evaluate(std::vector<double>{2, 5}), 4);
  EXPECT_DOUBLE_EQ(differentiate(parse("s^2"), 0).evaluate(3), 6);
}

TEST(Property, PrintedFormParsesBackToTheSameFunction) {
  RandomExpressions gen(20261015);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> xs(-2, 2);
  for (int k = 0; k < 300; ++k) {
    const Expression e = gen.next();
    const std::string text = e.to_string();
    const Expression back = parse(text);
    EXPECT_EQ(back.to_string(), text);
    for (int j = 0; j < 5; ++j) {
      const double x = xs(rng);
      const double a = e.evaluate(x), b = back.evaluate(x);
      EXPECT_NEAR(a, b, 1e-14 * (1 + std::abs(a))) << text;
    }
  }
}

TEST(Property, SymbolicDerivativeMatchesFiniteDifferences) {
  RandomExpressions gen(4242);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> xs(-1.8, 1.8);
  for (int k = 0; k < 300; ++k) {
    const Expression e = gen.next();
    const Expression d = e.derivative();
    for (int j = 0; j < 4; ++j) {
      const double x = xs(rng);
      const double fd = numeric_derivative([&](double t) { return e.evaluate(t); }, x);
      const double exact = d.evaluate(x);
      EXPECT_NEAR(exact, fd, 1e-6 * (1 + std::abs(exact))) << e.to_string() << " at " << x;
    }
  }
}
