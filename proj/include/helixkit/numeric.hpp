#pragma once

#include <functional>
#include <span>
#include <vector>

namespace helixkit::numeric {

/// Finite-difference weights for derivatives 0..max_order at x0 on arbitrary
/// distinct nodes (Fornberg's recursion). Result is indexed [order][node].
std::vector<std::vector<double>> fornberg_weights(double x0, std::span<const double> nodes, int max_order);

/// Index of the first node of a window of `width` consecutive samples, centred
/// on the sample nearest to x and clamped to the array (one-sided at the ends).
std::size_t stencil_start(std::span<const double> grid, double x, std::size_t width);

/// Derivative of order `order` of tabulated values at grid[i], using a
/// `width`-point window (centred when possible).
double grid_derivative(std::span<const double> grid, std::span<const double> values, std::size_t i, int order,
                       std::size_t width = 5);

/// Adaptive Simpson quadrature of f on [a, b] to absolute tolerance `tol`.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol, int max_depth = 48);

/// Cumulative integral of tabulated values: result[k] = integral from grid[0]
/// to grid[k]. Uses trapezoid panels with the Hermite end-slope correction
/// -h^2/12 (f'(x1) - f'(x0)); slopes come from 5-point differences, so the
/// rule is fourth order on smooth data.
std::vector<double> cumulative_integral(std::span<const double> grid, std::span<const double> values);

/// Plain cumulative trapezoid rule (second order).
std::vector<double> cumulative_trapezoid(std::span<const double> grid, std::span<const double> values);

/// Piecewise cubic Hermite interpolant. With Monotone slopes (Fritsch-Carlson)
/// it never overshoots monotone data; with explicit slopes it reproduces
/// cubics exactly.
class CubicHermite {
 public:
  CubicHermite() = default;
  /// Monotone (PCHIP) slopes. x strictly increasing, at least two nodes.
  CubicHermite(std::vector<double> x, std::vector<double> y);
  /// Caller-supplied slopes.
  CubicHermite(std::vector<double> x, std::vector<double> y, std::vector<double> dydx);

  double operator()(double t) const;
  double derivative(double t) const;
  double front() const { return x_.front(); }
  double back() const { return x_.back(); }
  std::size_t locate(double t) const;
  const std::vector<double>& nodes() const { return x_; }
  const std::vector<double>& values() const { return y_; }

 private:
  std::vector<double> x_, y_, m_;
};

/// Golden-section minimisation of a unimodal f on [a, b]; stops when the
/// bracket is narrower than tol. Returns the abscissa.
double golden_section_minimize(const std::function<double(double)>& f, double a, double b, double tol);

double mean(std::span<const double> v);
/// Population standard deviation.
double stddev(std::span<const double> v);
/// stddev / |mean|; +inf when the mean vanishes and the spread does not.
double relative_stddev(std::span<const double> v);

/// n uniformly spaced values covering [a, b] inclusive.
std::vector<double> linspace(double a, double b, std::size_t n);

}  // namespace helixkit::numeric
