#include <cmath>

#include <gtest/gtest.h>

#include "helixkit/numeric.hpp"

using namespace helixkit::numeric;

TEST(Fornberg, ExactOnPolynomialsAtOffNodePoints) {
  const std::vector<double> nodes{-0.3, 0.1, 0.2, 0.7, 1.1};
  const double x0 = 0.45;
  const auto w = fornberg_weights(x0, nodes, 4);
  auto p = [](double x) { return 2 - x + 3 * x * x - 0.5 * x * x * x + 0.25 * x * x * x * x; };
  const double exact[5] = {p(x0), -1 + 6 * x0 - 1.5 * x0 * x0 + x0 * x0 * x0, 6 - 3 * x0 + 3 * x0 * x0, -3 + 6 * x0,
                           6};
  for (int k = 0; k <= 4; ++k) {
    double acc = 0;
    for (std::size_t j = 0; j < nodes.size(); ++j) acc += w[k][j] * p(nodes[j]);
    EXPECT_NEAR(acc, exact[k], 1e-10) << "order " << k;
  }
}

TEST(GridDerivative, CentredAndOneSided) {
  const auto x = linspace(0, 1, 101);
  std::vector<double> y;
  for (double t : x) y.push_back(std::sin(3 * t));
  for (std::size_t i : {0ul, 1ul, 50ul, 99ul, 100ul}) {
    EXPECT_NEAR(grid_derivative(x, y, i, 1, 5), 3 * std::cos(3 * x[i]), 5e-6);
    EXPECT_NEAR(grid_derivative(x, y, i, 2, 7), -9 * std::sin(3 * x[i]), 5e-5);
  }
  EXPECT_EQ(stencil_start(x, 0.0, 5), 0u);
  EXPECT_EQ(stencil_start(x, 0.5, 5), 48u);
  EXPECT_EQ(stencil_start(x, 1.0, 5), 96u);
}

TEST(Quadrature, AdaptiveSimpson) {
  EXPECT_NEAR(adaptive_simpson([](double t) { return std::exp(t); }, 0, 2, 1e-12), std::exp(2) - 1, 1e-11);
  EXPECT_NEAR(adaptive_simpson([](double t) { return std::sqrt(t); }, 0, 1, 1e-10), 2.0 / 3, 1e-9);
}

TEST(Quadrature, CumulativeIntegralIsFourthOrder) {
  auto error = [](std::size_t n) {
    const auto x = linspace(0, 2, n);
    std::vector<double> y;
    for (double t : x) y.push_back(std::cos(3 * t));
    const auto I = cumulative_integral(x, y);
    double worst = 0;
    for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(I[k] - std::sin(3 * x[k]) / 3));
    return worst;
  };
  const double e1 = error(101), e2 = error(201);
  EXPECT_LT(e1, 1e-7);
  EXPECT_GT(e1 / e2, 12.0);  // ~16 for a fourth-order rule

  const auto x = linspace(0, 1, 11);
  std::vector<double> y(x.size(), 2.0);
  EXPECT_NEAR(cumulative_trapezoid(x, y).back(), 2.0, 1e-15);
}

TEST(Interpolation, MonotoneHermiteDoesNotOvershoot) {
  const std::vector<double> x{0, 1, 2, 3, 4}, y{0, 0.1, 0.2, 5, 5.1};
  const CubicHermite h(x, y);
  double prev = -1;
  for (double t : linspace(0, 4, 401)) {
    const double v = h(t);
    EXPECT_GE(v, prev - 1e-15);
    EXPECT_LE(v, 5.1 + 1e-15);
    prev = v;
  }
  for (std::size_t k = 0; k < x.size(); ++k) EXPECT_DOUBLE_EQ(h(x[k]), y[k]);
}

TEST(Interpolation, ExplicitSlopesReproduceCubics) {
  auto f = [](double t) { return t * t * t - 2 * t; };
  auto df = [](double t) { return 3 * t * t - 2; };
  const auto x = linspace(-1, 2, 7);
  std::vector<double> y, d;
  for (double t : x) {
    y.push_back(f(t));
    d.push_back(df(t));
  }
  const CubicHermite h(x, y, d);
  for (double t : linspace(-1, 2, 37)) {
    EXPECT_NEAR(h(t), f(t), 1e-13);
    EXPECT_NEAR(h.derivative(t), df(t), 1e-12);
  }
}

TEST(Optimisation, GoldenSection) {
  // Comparing f values near a quadratic minimum resolves x only to about √ε.
  EXPECT_NEAR(golden_section_minimize([](double t) { return (t - 0.3) * (t - 0.3) + 1; }, -2, 5, 1e-10), 0.3, 1e-7);
  EXPECT_NEAR(golden_section_minimize([](double t) { return std::abs(t + 1.25); }, -2, 5, 1e-10), -1.25, 1e-9);
}

TEST(Statistics, MeanStdAndRelative) {
  const std::vector<double> v{1, 2, 3, 4};
  EXPECT_DOUBLE_EQ(mean(v), 2.5);
  EXPECT_DOUBLE_EQ(stddev(v), std::sqrt(1.25));
  EXPECT_DOUBLE_EQ(relative_stddev(v), std::sqrt(1.25) / 2.5);
  EXPECT_EQ(relative_stddev(std::vector<double>{3, 3}), 0.0);
  EXPECT_TRUE(std::isinf(relative_stddev(std::vector<double>{-1, 1})));
  const auto g = linspace(1, 2, 3);
  EXPECT_EQ(g, (std::vector<double>{1, 1.5, 2}));
}
