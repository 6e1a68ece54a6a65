#include "helixkit/hypersurf.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "helixkit/numeric.hpp"

namespace helixkit {

namespace {

constexpr int kImmersionGrid = 16;
constexpr double kRankEps = 1e-12;

std::vector<double> as_args(const Vec& u) { return {u.data(), u.data() + u.size()}; }

Vec eval_all(const std::vector<Expression>& e, const Vec& u) {
  const auto args = as_args(u);
  Vec out(static_cast<Eigen::Index>(e.size()));
  for (std::size_t k = 0; k < e.size(); ++k) out[static_cast<Eigen::Index>(k)] = e[k].evaluate(args);
  return out;
}

// Visits every point of a per_axis^m grid over the box.
template <class F>
void for_each_grid_point(const std::vector<Interval>& box, int per_axis, F&& f) {
  const std::size_t m = box.size();
  std::vector<int> idx(m, 0);
  Vec u(static_cast<Eigen::Index>(m));
  while (true) {
    for (std::size_t i = 0; i < m; ++i)
      u[static_cast<Eigen::Index>(i)] =
          box[i].lo + box[i].length() * static_cast<double>(idx[i]) / static_cast<double>(per_axis - 1);
    f(u);
    std::size_t i = 0;
    while (i < m && ++idx[i] == per_axis) idx[i++] = 0;
    if (i == m) break;
  }
}

}  // namespace

Hypersurface::Hypersurface(std::vector<Expression> components, std::vector<std::string> parameters,
                           std::vector<Interval> box, Vec direction)
    : components_(std::move(components)),
      parameters_(std::move(parameters)),
      box_(std::move(box)),
      direction_(std::move(direction)) {
  const int n = dim();
  if (n < 2) throw std::invalid_argument("hypersurface needs n >= 2");
  if (static_cast<int>(parameters_.size()) != n - 1 || static_cast<int>(box_.size()) != n - 1)
    throw std::invalid_argument("hypersurface in E^" + std::to_string(n) + " needs " + std::to_string(n - 1) +
                                " parameters and box intervals");
  for (const auto& iv : box_)
    if (!(iv.lo < iv.hi)) throw std::invalid_argument("parameter box intervals must be non-empty");
  if (direction_.size() != n) throw std::invalid_argument("direction must have " + std::to_string(n) + " components");
  if (std::abs(direction_.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("direction must be a unit vector (norm " + std::to_string(direction_.norm()) + ")");

  first_.resize(n - 1);
  second_.assign(n - 1, std::vector<std::vector<Expression>>(n - 1));
  for (int i = 0; i < n - 1; ++i)
    for (const auto& c : components_) first_[i].push_back(c.derivative(i));
  for (int i = 0; i < n - 1; ++i)
    for (int j = 0; j < n - 1; ++j)
      for (const auto& d : first_[i]) second_[i][j].push_back(d.derivative(j));

  for_each_grid_point(box_, kImmersionGrid, [&](const Vec& u) {
    try {
      normal(u);
    } catch (const DegenerateError& e) {
      throw PreconditionError(std::string("parametrisation is not an immersion: ") + e.what());
    }
  });
}

bool Hypersurface::in_box(const Vec& u, double slack) const {
  for (int i = 0; i < parameter_count(); ++i)
    if (!box_[i].contains(u[i], slack)) return false;
  return true;
}

Vec Hypersurface::point(const Vec& u) const { return eval_all(components_, u); }

Mat Hypersurface::jacobian(const Vec& u) const {
  Mat J(dim(), parameter_count());
  for (int i = 0; i < parameter_count(); ++i) J.col(i) = eval_all(first_[i], u);
  return J;
}

Vec Hypersurface::second_derivative(const Vec& u, int i, int j) const { return eval_all(second_[i][j], u); }

Vec Hypersurface::normal(const Vec& u) const {
  const int n = dim();
  const Mat J = jacobian(u);
  Mat M(n, n);
  M.leftCols(n - 1) = J;
  Vec N(n);
  for (int k = 0; k < n; ++k) {
    M.col(n - 1) = Vec::Unit(n, k);
    N[k] = M.determinant();
  }
  double scale = 1.0;
  for (int i = 0; i < n - 1; ++i) scale *= std::max(J.col(i).norm(), 1e-300);
  const double len = N.norm();
  if (!(len > kRankEps * scale) || scale < kRankEps) {
    std::string at;
    for (int i = 0; i < u.size(); ++i) at += (i ? ", " : "") + std::to_string(u[i]);
    throw DegenerateError("coordinate tangents are rank deficient at (" + at + ")");
  }
  return N / len;
}

Vec Hypersurface::project(const Vec& x, const Vec& guess) const {
  Vec u = guess;
  for (int it = 0; it < 30; ++it) {
    const Mat J = jacobian(u);
    const Vec du = J.colPivHouseholderQr().solve(x - point(u));
    u += du;
    if (!u.allFinite()) break;
    if (du.norm() <= 1e-14 * (1.0 + u.norm())) return u;
  }
  if (u.allFinite() && (point(u) - x).norm() < 1e-6) return u;
  throw IntegrationError("projection onto the surface did not converge");
}

Vec normal(const Hypersurface& h, const Vec& u) { return h.normal(u); }

HelixSurfaceResult is_helix_surface(const Hypersurface& h, int per_axis, double tol) {
  if (per_axis < 2) throw std::invalid_argument("helix-surface grid needs at least 2 points per axis");
  std::vector<double> vals;
  for_each_grid_point(h.box(), per_axis, [&](const Vec& u) { vals.push_back(h.normal(u).dot(h.direction())); });
  HelixSurfaceResult r;
  r.samples = static_cast<int>(vals.size());
  r.value = numeric::mean(vals);
  r.stddev = numeric::stddev(vals);
  r.relative_stddev = numeric::relative_stddev(vals);
  r.constant = r.stddev <= tol;
  return r;
}

namespace {

struct Phase {
  Vec x, v;
};

// α'' = λξ with λ = Σ ⟨X_ij, ξ⟩ u'_i u'_j and u' = J⁺α'.
Vec acceleration(const Hypersurface& h, const Vec& x, const Vec& v, Vec& u, double* lambda_out = nullptr) {
  u = h.project(x, u);
  const Mat J = h.jacobian(u);
  const Vec du = J.colPivHouseholderQr().solve(v);
  const Vec xi = h.normal(u);
  double lambda = 0.0;
  for (int i = 0; i < h.parameter_count(); ++i)
    for (int j = 0; j < h.parameter_count(); ++j) lambda += h.second_derivative(u, i, j).dot(xi) * du[i] * du[j];
  if (lambda_out) *lambda_out = lambda;
  return lambda * xi;
}

}  // namespace

std::vector<GeodesicSample> geodesic(const Hypersurface& h, const Vec& start, const Vec& tangent, double length,
                                     int steps) {
  if (start.size() != h.parameter_count()) throw std::invalid_argument("start must have n-1 parameters");
  if (tangent.size() != h.dim()) throw std::invalid_argument("tangent must have n components");
  if (!(length > 0) || steps < 1) throw std::invalid_argument("geodesic needs length > 0 and steps >= 1");
  if (!h.in_box(start)) throw std::invalid_argument("start lies outside the parameter box");
  const Vec xi0 = h.normal(start);
  if (std::abs(tangent.norm() - 1.0) > 1e-10) throw PreconditionError("tangent must be a unit vector");
  if (std::abs(tangent.dot(xi0)) > 1e-10)
    throw PreconditionError("tangent is not in the tangent space at the start (⟨t, ξ⟩ = " +
                            std::to_string(tangent.dot(xi0)) + ")");

  const double ds = length / steps;
  std::vector<GeodesicSample> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  Vec u = start;
  Phase y{h.point(start), tangent};
  GeodesicSample first;
  first.position = y.x;
  first.params = u;
  first.velocity = y.v;
  acceleration(h, y.x, y.v, u, &first.lambda);
  out.push_back(first);

  for (int k = 1; k <= steps; ++k) {
    Vec us = u;
    const Vec a1 = acceleration(h, y.x, y.v, us);
    const Vec x2 = y.x + ds / 2 * y.v, v2 = y.v + ds / 2 * a1;
    const Vec a2 = acceleration(h, x2, v2, us);
    const Vec x3 = y.x + ds / 2 * v2, v3 = y.v + ds / 2 * a2;
    const Vec a3 = acceleration(h, x3, v3, us);
    const Vec x4 = y.x + ds * v3, v4 = y.v + ds * a3;
    const Vec a4 = acceleration(h, x4, v4, us);
    const Vec x = y.x + ds / 6 * (y.v + 2 * v2 + 2 * v3 + v4);
    Vec v = y.v + ds / 6 * (a1 + 2 * a2 + 2 * a3 + a4);

    GeodesicSample g;
    g.s = k * ds;
    u = h.project(x, us);
    if (!h.in_box(u, 1e-12))
      throw IntegrationError("geodesic left the parameter box at s = " + std::to_string(g.s));
    g.position = h.point(u);
    g.surface_residual = (g.position - x).norm();
    const Vec xi = h.normal(u);
    v -= v.dot(xi) * xi;
    g.speed_defect = std::abs(v.norm() - 1.0);
    v.normalize();
    g.params = u;
    g.velocity = v;
    Vec ul = u;
    acceleration(h, g.position, v, ul, &g.lambda);
    y = {g.position, v};
    out.push_back(std::move(g));
  }

  for (std::size_t j = 1; j + 1 < out.size(); ++j) {
    const Vec a = (out[j + 1].velocity - out[j - 1].velocity) / (2 * ds);
    const Vec xi = h.normal(out[j].params);
    out[j].tangential_acceleration = (a - a.dot(xi) * xi).norm();
  }
  return out;
}

Curve geodesic_curve(const std::vector<GeodesicSample>& samples, int stride) {
  if (stride < 1) throw std::invalid_argument("stride must be positive");
  std::vector<double> s;
  std::vector<Vec> pts;
  for (std::size_t j = 0; j < samples.size(); j += static_cast<std::size_t>(stride)) {
    s.push_back(samples[j].s);
    pts.push_back(samples[j].position);
  }
  return Curve::sampled(std::move(s), std::move(pts));
}

std::vector<GeodesicSpec> random_geodesics(const Hypersurface& h, int count, unsigned seed, double length) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<GeodesicSpec> out;
  const int m = h.parameter_count();
  for (int k = 0; k < count; ++k) {
    GeodesicSpec g;
    g.start = Vec(m);
    for (int i = 0; i < m; ++i) g.start[i] = h.box()[i].lo + h.box()[i].length() * (0.25 + 0.5 * unit(rng));
    // Orthonormal basis of the tangent space from the coordinate tangents.
    const Mat J = h.jacobian(g.start);
    std::vector<Vec> basis;
    for (int i = 0; i < m; ++i) {
      Vec w = J.col(i);
      for (const auto& b : basis) w -= w.dot(b) * b;
      basis.push_back(w.normalized());
    }
    // Random unit combination, steered away from every coordinate direction.
    Vec c(m);
    do {
      for (int i = 0; i < m; ++i) c[i] = 2 * unit(rng) - 1;
    } while (c.norm() < 1e-3 || (c.cwiseAbs() / c.norm()).minCoeff() < std::sin(0.2));
    c.normalize();
    g.tangent = Vec::Zero(h.dim());
    for (int i = 0; i < m; ++i) g.tangent += c[i] * basis[i];
    g.tangent.normalize();
    g.length = length;
    g.steps = static_cast<int>(std::ceil(length / 1e-3));
    out.push_back(std::move(g));
  }
  return out;
}

GeodesicTheoremReport verify_geodesic_theorems(const Hypersurface& h,
                                               const std::vector<std::vector<GeodesicSample>>& geodesics,
                                               const GeodesicVerifyOptions& opts) {
  GeodesicTheoremReport rep;
  rep.surface = is_helix_surface(h);
  if (!rep.surface.constant) {
    rep.message = "not a helix surface: std of <d, xi> = " + std::to_string(rep.surface.stddev);
    return rep;
  }
  const Vec& d = h.direction();
  std::vector<Vec> axes;
  bool all_ok = true;
  for (const auto& samples : geodesics) {
    GeodesicCheck chk;
    chk.samples = static_cast<int>(samples.size());
    for (const auto& g : samples) {
      chk.max_speed_defect = std::max(chk.max_speed_defect, g.speed_defect);
      chk.max_surface_residual = std::max(chk.max_surface_residual, g.surface_residual);
      chk.max_tangential_acceleration = std::max(chk.max_tangential_acceleration, g.tangential_acceleration);
    }
    const double ds = samples.size() > 1 ? samples[1].s - samples[0].s : opts.sample_spacing;
    const int stride = std::max(1, static_cast<int>(std::lround(opts.sample_spacing / ds)));
    const Curve c = geodesic_curve(samples, stride);

    ClassifyOptions co = opts.classify;
    co.axis_hint = d;
    chk.curve = classify(c, co);
    if (chk.curve.status == ReportStatus::Degenerate) {
      chk.excluded = true;
      chk.message = "k_1 vanishes along the geodesic (straight line); excluded: " + chk.curve.message;
      rep.geodesics.push_back(std::move(chk));
      continue;
    }
    chk.normal_mean = chk.curve.hint->normal_mean;
    chk.normal_std = chk.curve.hint->normal_std;
    chk.slant = chk.normal_std <= opts.tol_normal;

    // ξ = ±V_2 along the geodesic.
    const auto grid = frenet_grid(c, co.grid, co.margin, co.frenet);
    std::size_t j = 0;
    for (const auto& a : grid) {
      while (j + 1 < samples.size() && samples[j + 1].s <= a.s) ++j;
      const auto& g = (j + 1 < samples.size() && samples[j + 1].s - a.s < a.s - samples[j].s) ? samples[j + 1]
                                                                                               : samples[j];
      const Vec uu = h.project(c.position(a.s), g.params);
      chk.normal_frame_angle = std::max(chk.normal_frame_angle, line_angle(h.normal(uu), a.V(2)));
      chk.normal_max_abs = std::max(chk.normal_max_abs, std::abs(a.V(2).dot(d)));
    }

    try {
      const Curve beta = tangent_indicatrix(c.trimmed(co.margin));
      chk.indicatrix = classify(beta, co);
      if (chk.indicatrix.general.detected) {
        chk.indicatrix_axis = chk.indicatrix.general.axis;
      } else if (chk.indicatrix.hint && chk.indicatrix.hint->general) {
        chk.indicatrix_axis = chk.indicatrix.hint->fitted_tangent_axis;
      }
      if (chk.indicatrix_axis.size()) {
        chk.indicatrix_axis_angle = line_angle(chk.indicatrix_axis, d);
        chk.spherical_general = chk.indicatrix_axis_angle <= opts.tol_axis;
        axes.push_back(chk.indicatrix_axis);
      } else {
        chk.message = "indicatrix is not classified as a general helix";
      }
    } catch (const std::exception& e) {
      chk.message = std::string("indicatrix: ") + e.what();
    }
    all_ok = all_ok && chk.slant && chk.spherical_general;
    rep.geodesics.push_back(std::move(chk));
  }
  for (std::size_t a = 0; a < axes.size(); ++a)
    for (std::size_t b = a + 1; b < axes.size(); ++b)
      rep.max_pairwise_axis_angle = std::max(rep.max_pairwise_axis_angle, line_angle(axes[a], axes[b]));
  rep.axes_coincide = !axes.empty() && rep.max_pairwise_axis_angle <= opts.tol_pairwise;
  rep.passed = all_ok && rep.axes_coincide;
  if (axes.empty())
    rep.message = "no geodesic with non-vanishing curvature";
  else if (!rep.passed)
    rep.message = "theorem checks failed for at least one geodesic";
  return rep;
}

}  // namespace helixkit
