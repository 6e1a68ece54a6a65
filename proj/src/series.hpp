#pragma once

// Truncated power series arithmetic. Used to carry derivative jets through an
// arc-length reparametrisation: with c(t0 + e) known to order K, the jet of
// s -> c(t(s)) follows from sqrt, integration, series reversion and
// composition.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace helixkit::detail {

class Series {
 public:
  explicit Series(std::size_t order) : c_(order + 1, 0.0) {}
  Series(std::vector<double> coeffs) : c_(std::move(coeffs)) {}

  std::size_t order() const { return c_.size() - 1; }
  double& operator[](std::size_t k) { return c_[k]; }
  double operator[](std::size_t k) const { return c_[k]; }

  friend Series operator+(const Series& a, const Series& b) {
    Series r(a.order());
    for (std::size_t k = 0; k <= a.order(); ++k) r[k] = a[k] + b[k];
    return r;
  }

  friend Series operator*(const Series& a, const Series& b) {
    Series r(a.order());
    for (std::size_t i = 0; i <= a.order(); ++i)
      for (std::size_t j = 0; i + j <= a.order(); ++j) r[i + j] += a[i] * b[j];
    return r;
  }

  Series derivative() const {
    Series r(order());
    for (std::size_t k = 0; k < order(); ++k) r[k] = static_cast<double>(k + 1) * c_[k + 1];
    return r;
  }

  /// Antiderivative vanishing at 0 (the top coefficient is dropped).
  Series integral() const {
    Series r(order());
    for (std::size_t k = 0; k < order(); ++k) r[k + 1] = c_[k] / static_cast<double>(k + 1);
    return r;
  }

  Series sqrt() const {
    if (!(c_[0] > 0)) throw std::domain_error("Series::sqrt needs a positive constant term");
    Series r(order());
    r[0] = std::sqrt(c_[0]);
    for (std::size_t k = 1; k <= order(); ++k) {
      double acc = c_[k];
      for (std::size_t j = 1; j < k; ++j) acc -= r[j] * r[k - j];
      r[k] = acc / (2.0 * r[0]);
    }
    return r;
  }

  /// this(inner(x)) where inner has zero constant term.
  Series compose(const Series& inner) const {
    Series r(order());
    for (std::size_t k = order() + 1; k-- > 0;) {
      r = r * inner;
      r[0] += c_[k];
    }
    return r;
  }

  /// Compositional inverse of a series with c[0] = 0, c[1] != 0.
  Series reversion() const {
    if (c_[0] != 0.0 || c_[1] == 0.0) throw std::domain_error("Series::reversion needs c0 = 0, c1 != 0");
    Series inv(order());
    inv[1] = 1.0 / c_[1];
    for (std::size_t k = 2; k <= order(); ++k) {
      const Series roundtrip = compose(inv);
      inv[k] = -roundtrip[k] / c_[1];
    }
    return inv;
  }

 private:
  std::vector<double> c_;
};

}  // namespace helixkit::detail
