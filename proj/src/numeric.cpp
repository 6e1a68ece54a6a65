#include "helixkit/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace helixkit::numeric {

std::vector<std::vector<double>> fornberg_weights(double x0, std::span<const double> x, int max_order) {
  const std::size_t n = x.size();
  const int m = max_order;
  if (n == 0 || m < 0) throw std::invalid_argument("fornberg_weights: empty stencil");
  // c[node][order]
  std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - x0;
  c[0][0] = 1.0;
  for (std::size_t i = 1; i < n; ++i) {
    const int mn = std::min<int>(static_cast<int>(i), m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - x0;
    for (std::size_t j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
        c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
      }
      for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
      c[j][0] = c4 * c[j][0] / c3;
    }
    c1 = c2;
  }
  std::vector<std::vector<double>> w(m + 1, std::vector<double>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (int k = 0; k <= m; ++k) w[k][j] = c[j][k];
  return w;
}

std::size_t stencil_start(std::span<const double> grid, double x, std::size_t width) {
  const std::size_t n = grid.size();
  if (width > n) throw std::invalid_argument("stencil wider than the sample table");
  auto it = std::lower_bound(grid.begin(), grid.end(), x);
  std::size_t nearest = static_cast<std::size_t>(it - grid.begin());
  if (nearest == n || (nearest > 0 && x - grid[nearest - 1] < grid[nearest] - x)) --nearest;
  const std::size_t half = width / 2;
  std::size_t start = nearest > half ? nearest - half : 0;
  return std::min(start, n - width);
}

double grid_derivative(std::span<const double> grid, std::span<const double> values, std::size_t i, int order,
                       std::size_t width) {
  width = std::min(width, grid.size());
  const std::size_t start = stencil_start(grid, grid[i], width);
  const auto w = fornberg_weights(grid[i], grid.subspan(start, width), order);
  double acc = 0.0;
  for (std::size_t j = 0; j < width; ++j) acc += w[order][j] * values[start + j];
  return acc;
}

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
                    double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol, int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

std::vector<double> cumulative_trapezoid(std::span<const double> grid, std::span<const double> values) {
  std::vector<double> out(grid.size(), 0.0);
  for (std::size_t k = 1; k < grid.size(); ++k)
    out[k] = out[k - 1] + 0.5 * (grid[k] - grid[k - 1]) * (values[k] + values[k - 1]);
  return out;
}

std::vector<double> cumulative_integral(std::span<const double> grid, std::span<const double> values) {
  const std::size_t n = grid.size();
  if (n < 5) return cumulative_trapezoid(grid, values);
  std::vector<double> slope(n);
  for (std::size_t k = 0; k < n; ++k) slope[k] = grid_derivative(grid, values, k, 1, 5);
  std::vector<double> out(n, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    const double h = grid[k] - grid[k - 1];
    out[k] = out[k - 1] + 0.5 * h * (values[k] + values[k - 1]) + h * h / 12.0 * (slope[k - 1] - slope[k]);
  }
  return out;
}

namespace {

double pchip_end_slope(double h0, double h1, double d0, double d1) {
  double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
  if (std::signbit(m) != std::signbit(d0) || m == 0.0)
    m = 0.0;
  else if (std::signbit(d0) != std::signbit(d1) && std::abs(m) > 3.0 * std::abs(d0))
    m = 3.0 * d0;
  return m;
}

}  // namespace

CubicHermite::CubicHermite(std::vector<double> x, std::vector<double> y) : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) throw std::invalid_argument("CubicHermite: need at least two nodes");
  std::vector<double> h(n - 1), d(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x_[k + 1] - x_[k];
    if (!(h[k] > 0)) throw std::invalid_argument("CubicHermite: nodes must be strictly increasing");
    d[k] = (y_[k + 1] - y_[k]) / h[k];
  }
  m_.assign(n, 0.0);
  if (n == 2) {
    m_[0] = m_[1] = d[0];
    return;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (d[k - 1] * d[k] <= 0.0) {
      m_[k] = 0.0;
    } else {
      const double w1 = 2.0 * h[k] + h[k - 1];
      const double w2 = h[k] + 2.0 * h[k - 1];
      m_[k] = (w1 + w2) / (w1 / d[k - 1] + w2 / d[k]);
    }
  }
  m_[0] = pchip_end_slope(h[0], h[1], d[0], d[1]);
  m_[n - 1] = pchip_end_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
}

CubicHermite::CubicHermite(std::vector<double> x, std::vector<double> y, std::vector<double> dydx)
    : x_(std::move(x)), y_(std::move(y)), m_(std::move(dydx)) {
  if (x_.size() < 2 || y_.size() != x_.size() || m_.size() != x_.size())
    throw std::invalid_argument("CubicHermite: inconsistent node tables");
}

std::size_t CubicHermite::locate(double t) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), t);
  std::size_t k = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  return std::min(k, x_.size() - 2);
}

double CubicHermite::operator()(double t) const {
  const std::size_t k = locate(t);
  const double h = x_[k + 1] - x_[k];
  const double u = (t - x_[k]) / h;
  const double u2 = u * u, u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * y_[k] + (u3 - 2 * u2 + u) * h * m_[k] + (-2 * u3 + 3 * u2) * y_[k + 1] +
         (u3 - u2) * h * m_[k + 1];
}

double CubicHermite::derivative(double t) const {
  const std::size_t k = locate(t);
  const double h = x_[k + 1] - x_[k];
  const double u = (t - x_[k]) / h;
  const double u2 = u * u;
  return ((6 * u2 - 6 * u) * y_[k] + (-6 * u2 + 6 * u) * y_[k + 1]) / h + (3 * u2 - 4 * u + 1) * m_[k] +
         (3 * u2 - 2 * u) * m_[k + 1];
}

double golden_section_minimize(const std::function<double(double)>& f, double a, double b, double tol) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (std::abs(b - a) > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

double mean(std::span<const double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

double stddev(std::span<const double> v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double mu = mean(v);
  double acc = 0.0;
  for (double x : v) acc += (x - mu) * (x - mu);
  return std::sqrt(acc / static_cast<double>(v.size()));
}

double relative_stddev(std::span<const double> v) {
  const double sd = stddev(v);
  const double mu = std::abs(mean(v));
  if (mu == 0.0) return sd == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return sd / mu;
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = a;
    return out;
  }
  for (std::size_t k = 0; k < n; ++k) out[k] = a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1);
  out.back() = b;
  return out;
}

}  // namespace helixkit::numeric
