#include "helixkit/frenet.hpp"

#include <cmath>
#include <string>

#include "helixkit/numeric.hpp"

namespace helixkit {

namespace {

// Forward-mode dual number: value and derivative along the curve parameter.
struct Dual {
  double v = 0.0;
  double d = 0.0;
};

Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
Dual operator/(Dual a, Dual b) { return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)}; }
Dual dsqrt(Dual a) {
  const double r = std::sqrt(a.v);
  return {r, a.d / (2.0 * r)};
}

using DVec = std::vector<Dual>;

Dual dot(const DVec& a, const DVec& b) {
  Dual acc;
  for (std::size_t i = 0; i < a.size(); ++i) acc = acc + a[i] * b[i];
  return acc;
}

void axpy(DVec& y, Dual a, const DVec& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = y[i] - a * x[i];
}

Vec values(const DVec& x) {
  Vec out(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) out[static_cast<Eigen::Index>(i)] = x[i].v;
  return out;
}

Vec derivs(const DVec& x) {
  Vec out(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) out[static_cast<Eigen::Index>(i)] = x[i].d;
  return out;
}

// Extends `frame` (orthonormal, fewer than n vectors) to a positively
// oriented orthonormal basis using the standard basis vectors that are least
// aligned with what is already there.
void complete_basis(std::vector<Vec>& frame, int n) {
  while (static_cast<int>(frame.size()) < n) {
    Vec best;
    double best_norm = -1.0;
    for (int k = 0; k < n; ++k) {
      Vec w = Vec::Unit(n, k);
      for (const auto& f : frame) w -= w.dot(f) * f;
      for (const auto& f : frame) w -= w.dot(f) * f;
      const double nw = w.norm();
      if (nw > best_norm + 1e-12) {
        best_norm = nw;
        best = w / nw;
      }
    }
    frame.push_back(best);
  }
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.col(i) = frame[i];
  if (m.determinant() < 0) frame.back() = -frame.back();
}

}  // namespace

FrenetApparatus frenet_from_jet(const DerivativeJet& jet, const FrenetOptions& opts) {
  const int n = static_cast<int>(jet.d.front().size());
  if (jet.order() < n) throw std::invalid_argument("Frenet apparatus in E^n needs derivatives up to order n");
  const bool want_derivs = opts.derivatives && jet.order() >= n + 1;

  // d[j] = (d^{j+1}, d^{j+2}) as duals.
  std::vector<DVec> d(n, DVec(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) d[j][i] = {jet.d[j][i], want_derivs ? jet.d[j + 1][i] : 0.0};

  FrenetApparatus out;
  out.s = jet.s;
  std::vector<DVec> V;
  std::vector<Dual> k;
  Dual speed;
  Dual prod{1.0, 0.0};  // k_1 ... k_{i-1}
  Dual vpow;            // speed^{i+1}

  for (int j = 0; j < n - 1; ++j) {
    DVec w = d[j];
    for (const auto& f : V) axpy(w, dot(w, f), f);
    for (const auto& f : V) axpy(w, dot(w, f), f);
    const Dual r = dsqrt(dot(w, w));
    if (j == 0) {
      if (!(r.v > kRegularityEps)) throw DegenerateError("non-regular point (vanishing velocity)");
      speed = r;
      vpow = r;
    } else {
      // r = speed^{j+1} k_1 ... k_j
      vpow = vpow * speed;
      const Dual kj = r / (vpow * prod);
      k.push_back(kj);
      if (kj.v < opts.curvature_eps) {
        out.degenerate_rank = j;
        break;
      }
      prod = prod * kj;
    }
    DVec unit(n);
    for (int i = 0; i < n; ++i) unit[i] = w[i] / r;
    V.push_back(std::move(unit));
  }
  out.speed = speed.v;

  if (out.degenerate_rank) {
    for (const auto& f : V) out.frame.push_back(values(f));
    complete_basis(out.frame, n);
    for (const auto& kj : k) out.curvatures.push_back(kj.v);
    out.curvatures.resize(n - 1, 0.0);
    return out;
  }

  // V_n: orientation-completing unit vector; derivative from orthogonality,
  // V_n' = -sum_j <V_n, V_j'> V_j.
  std::vector<Vec> frame;
  for (const auto& f : V) frame.push_back(values(f));
  complete_basis(frame, n);
  DVec vn(n);
  {
    Vec dn = Vec::Zero(n);
    for (const auto& f : V) dn -= frame.back().dot(derivs(f)) * values(f);
    for (int i = 0; i < n; ++i) vn[i] = {frame.back()[i], dn[i]};
  }
  vpow = vpow * speed;
  const Dual klast = dot(d[n - 1], vn) / (vpow * prod);
  k.push_back(klast);
  if (std::abs(klast.v) < opts.curvature_eps) out.degenerate_rank = n - 1;

  V.push_back(std::move(vn));
  out.frame = std::move(frame);
  for (const auto& kj : k) out.curvatures.push_back(kj.v);
  if (want_derivs) {
    // d/ds = (1/|α'|) d/dt
    for (const auto& f : V) out.frame_derivatives.push_back(derivs(f) / speed.v);
    for (const auto& kj : k) out.curvature_derivatives.push_back(kj.d / speed.v);
  }
  return out;
}

FrenetApparatus frenet_at(const Curve& c, double s, const FrenetOptions& opts) {
  if (!c.unit_speed())
    throw PreconditionError("Frenet apparatus requires a unit-speed curve (max |‖α'‖-1| = " +
                            std::to_string(c.unit_speed_deviation()) + "); reparametrise by arc length first");
  const int n = c.dim();
  const int order = (opts.derivatives && c.max_jet_order() >= n + 1) ? n + 1 : n;
  if (c.max_jet_order() < n)
    throw std::invalid_argument("curve cannot supply derivatives of order " + std::to_string(n) +
                                "; use an analytic curve for n > 4");
  return frenet_from_jet(c.jet(s, order), opts);
}

std::vector<FrenetApparatus> frenet_grid(const Curve& c, int m, double margin_fraction, const FrenetOptions& opts) {
  if (m < 16) throw std::invalid_argument("Frenet grid needs m >= 16");
  const Curve trimmed = c.trimmed(margin_fraction);
  const auto grid = numeric::linspace(trimmed.domain().lo, trimmed.domain().hi, static_cast<std::size_t>(m));
  std::vector<FrenetApparatus> out;
  out.reserve(grid.size());
  for (double s : grid) out.push_back(frenet_at(trimmed, s, opts));

  // Validation path: k_i ≈ <ΔV_i/Δs, V_{i+1}> from neighbouring frames.
  const int n = c.dim();
  for (std::size_t j = 0; j < out.size(); ++j) {
    const std::size_t a = j == 0 ? 0 : j - 1;
    const std::size_t b = std::min(j + 1, out.size() - 1);
    if (out[a].degenerate_rank.value_or(n) < n - 1 || out[b].degenerate_rank.value_or(n) < n - 1) continue;
    const double ds = out[b].s - out[a].s;
    auto& fd = out[j].frame_difference_curvatures;
    for (int i = 1; i < n; ++i) fd.push_back((out[b].V(i) - out[a].V(i)).dot(out[j].V(i + 1)) / ds);
  }
  return out;
}

double orthonormality_defect(const FrenetApparatus& a) {
  double worst = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      worst = std::max(worst, std::abs(a.frame[i].dot(a.frame[j]) - (i == j ? 1.0 : 0.0)));
  return worst;
}

double frame_determinant(const FrenetApparatus& a) {
  Mat m(a.dim(), a.dim());
  for (int i = 0; i < a.dim(); ++i) m.col(i) = a.frame[i];
  return m.determinant();
}

double frenet_ode_residual(const std::vector<FrenetApparatus>& grid) {
  double worst = 0.0;
  for (std::size_t j = 1; j + 1 < grid.size(); ++j) {
    const auto& prev = grid[j - 1];
    const auto& cur = grid[j];
    const auto& next = grid[j + 1];
    const int n = cur.dim();
    const double ds = next.s - prev.s;
    for (int i = 1; i <= n; ++i) {
      Vec expected = Vec::Zero(n);
      if (i > 1) expected -= cur.k(i - 1) * cur.V(i - 1);
      if (i < n) expected += cur.k(i) * cur.V(i + 1);
      const Vec fd = (next.V(i) - prev.V(i)) / ds;
      worst = std::max(worst, (fd - expected).norm());
    }
  }
  return worst;
}

}  // namespace helixkit
