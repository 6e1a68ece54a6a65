#include "helixkit/curve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "helixkit/numeric.hpp"
#include "series.hpp"

namespace helixkit {

namespace detail {

/// s <-> t map of an analytic curve. Forward values come from an arc-length
/// table refined by quadrature; the inverse is a monotone cubic guess followed
/// by Newton steps on the exact forward map.
struct ArcLengthMap {
  std::vector<Expression> velocity;  // c'(t) per component
  std::vector<double> t_nodes;
  std::vector<double> s_nodes;
  numeric::CubicHermite inverse;

  double speed(double t) const {
    double acc = 0.0;
    for (const auto& e : velocity) {
      const double v = e.evaluate(t);
      acc += v * v;
    }
    return std::sqrt(acc);
  }

  double s_at(double t) const {
    auto it = std::upper_bound(t_nodes.begin(), t_nodes.end(), t);
    std::size_t k = it == t_nodes.begin() ? 0 : static_cast<std::size_t>(it - t_nodes.begin()) - 1;
    k = std::min(k, t_nodes.size() - 1);
    return s_nodes[k] + numeric::adaptive_simpson([this](double x) { return speed(x); }, t_nodes[k], t, 1e-13);
  }

  double t_at(double s) const {
    double t = inverse(s);
    for (int it = 0; it < 3; ++it) {
      const double step = (s_at(t) - s) / speed(t);
      t -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(t))) break;
    }
    return std::clamp(t, t_nodes.front(), t_nodes.back());
  }
};

}  // namespace detail

namespace {

constexpr int kSampledMaxOrder = 4;
constexpr std::size_t kVerifyGrid = 1000;
constexpr std::size_t kArcTableNodes = 1024;

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

std::size_t stencil_width(int order) { return order <= 2 ? 5 : 7; }

// Locates the global minimum of a non-negative speed function on [a, b]:
// grid scan, then golden-section refinement around every grid-local minimum.
std::pair<double, double> min_speed(const std::function<double(double)>& speed, Interval dom) {
  const auto grid = numeric::linspace(dom.lo, dom.hi, kVerifyGrid);
  std::vector<double> v(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) v[k] = speed(grid[k]);
  double best_t = grid[0], best_v = v[0];
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const bool left_ok = k == 0 || v[k] <= v[k - 1];
    const bool right_ok = k + 1 == grid.size() || v[k] <= v[k + 1];
    if (!(left_ok && right_ok)) continue;
    const double a = grid[k == 0 ? 0 : k - 1];
    const double b = grid[std::min(k + 1, grid.size() - 1)];
    const double t = numeric::golden_section_minimize(speed, a, b, 1e-13 * std::max(1.0, dom.length()));
    const double vt = std::min(speed(t), v[k]);
    if (vt < best_v) {
      best_v = vt;
      best_t = vt == v[k] ? grid[k] : t;
    }
  }
  return {best_t, best_v};
}

}  // namespace

Curve Curve::analytic(std::vector<Expression> components, Interval domain, std::string parameter) {
  if (components.size() < 2) throw std::invalid_argument("curve dimension must be at least 2");
  if (!(domain.lo < domain.hi)) throw std::invalid_argument("curve domain must satisfy a < b");
  Curve c;
  c.kind_ = Kind::Analytic;
  c.dim_ = static_cast<int>(components.size());
  c.domain_ = domain;
  c.parameter_ = std::move(parameter);
  c.components_ = std::move(components);
  const int top = c.dim_ + 2;
  c.derivs_.push_back(c.components_);
  for (int k = 1; k <= top; ++k) {
    std::vector<Expression> next;
    next.reserve(c.dim_);
    for (const auto& e : c.derivs_.back()) next.push_back(e.derivative());
    c.derivs_.push_back(std::move(next));
  }
  c.verify_unit_speed();
  return c;
}

Curve Curve::sampled(std::vector<double> parameters, std::vector<Vec> points) {
  if (points.empty() || parameters.size() != points.size())
    throw std::invalid_argument("sampled curve needs one parameter value per point");
  const int n = static_cast<int>(points.front().size());
  if (n < 2) throw std::invalid_argument("curve dimension must be at least 2");
  for (const auto& p : points)
    if (p.size() != n) throw std::invalid_argument("sample points must all have the same dimension");
  if (points.size() < static_cast<std::size_t>(2 * (n + 2)))
    throw std::invalid_argument("sampled curve needs at least 2(n+2) = " + std::to_string(2 * (n + 2)) +
                                " samples");
  for (std::size_t k = 1; k < parameters.size(); ++k)
    if (!(parameters[k] > parameters[k - 1]))
      throw std::invalid_argument("sample parameter values must be strictly increasing");
  Curve c;
  c.kind_ = Kind::Sampled;
  c.dim_ = n;
  c.domain_ = {parameters.front(), parameters.back()};
  c.params_ = std::move(parameters);
  c.points_ = std::move(points);
  c.verify_unit_speed();
  return c;
}

int Curve::max_jet_order() const {
  if (kind_ == Kind::Sampled) return kSampledMaxOrder;
  return static_cast<int>(derivs_.size()) - 1;
}

const Expression& Curve::component_derivative(int order, int i) const { return derivs_.at(order).at(i); }

void Curve::verify_unit_speed() {
  double worst = 0.0;
  for (double s : numeric::linspace(domain_.lo, domain_.hi, kVerifyGrid)) {
    const DerivativeJet j = jet(s, 1);
    worst = std::max(worst, std::abs(j[1].norm() - 1.0));
  }
  unit_speed_deviation_ = worst;
  unit_speed_ = worst <= unit_speed_tolerance();
}

std::vector<Vec> Curve::raw_derivatives(double t, int order) const {
  std::vector<Vec> out;
  for (int k = 0; k <= order; ++k) {
    Vec v(dim_);
    for (int i = 0; i < dim_; ++i) v[i] = derivs_[k][i].evaluate(t);
    out.push_back(std::move(v));
  }
  return out;
}

double Curve::underlying_parameter(double s) const { return arc_ ? arc_->t_at(s) : s; }

Interval Curve::underlying_domain() const {
  if (!arc_) return domain_;
  return {arc_->t_at(domain_.lo), arc_->t_at(domain_.hi)};
}

Vec Curve::position(double s) const {
  const double slack = 1e-9 * std::max(1.0, domain_.length());
  if (!domain_.contains(s, slack)) throw std::out_of_range("parameter " + std::to_string(s) + " outside domain");
  if (kind_ == Kind::Analytic) {
    const double t = underlying_parameter(s);
    Vec p(dim_);
    for (int i = 0; i < dim_; ++i) p[i] = components_[i].evaluate(t);
    return p;
  }
  const std::size_t width = std::min<std::size_t>(7, params_.size());
  const std::size_t start = numeric::stencil_start(params_, s, width);
  const auto w = numeric::fornberg_weights(s, std::span(params_).subspan(start, width), 0);
  Vec p = Vec::Zero(dim_);
  for (std::size_t j = 0; j < width; ++j) p += w[0][j] * points_[start + j];
  return p;
}

DerivativeJet Curve::jet(double s, int order) const {
  if (order < 1) throw std::invalid_argument("jet order must be at least 1");
  if (order > max_jet_order())
    throw std::invalid_argument("jet order " + std::to_string(order) + " exceeds what this curve provides (" +
                                std::to_string(max_jet_order()) + ")");
  const double slack = 1e-9 * std::max(1.0, domain_.length());
  if (!domain_.contains(s, slack)) throw std::out_of_range("parameter " + std::to_string(s) + " outside domain");
  s = std::clamp(s, domain_.lo, domain_.hi);

  DerivativeJet j;
  j.s = s;
  if (kind_ == Kind::Sampled) {
    j.position = position(s);
    for (int k = 1; k <= order; ++k) {
      const std::size_t width = stencil_width(k);
      if (params_.size() < width)
        throw std::invalid_argument("too few samples for a " + std::to_string(width) + "-point stencil");
      const std::size_t start = numeric::stencil_start(params_, s, width);
      const auto w = numeric::fornberg_weights(s, std::span(params_).subspan(start, width), k);
      Vec d = Vec::Zero(dim_);
      for (std::size_t m = 0; m < width; ++m) d += w[k][m] * points_[start + m];
      j.d.push_back(std::move(d));
    }
    return j;
  }

  if (!arc_) {
    auto raw = raw_derivatives(s, order);
    j.position = std::move(raw[0]);
    j.d.assign(std::make_move_iterator(raw.begin() + 1), std::make_move_iterator(raw.end()));
    return j;
  }

  // Arc-length parametrised: push the Taylor expansion of c around t(s)
  // through the inverse of the arc-length series.
  const double t = arc_->t_at(s);
  const auto raw = raw_derivatives(t, order);
  std::vector<detail::Series> comp;
  detail::Series speed_sq(order);
  for (int i = 0; i < dim_; ++i) {
    detail::Series a(order);
    for (int k = 0; k <= order; ++k) a[k] = raw[k][i] / factorial(k);
    const detail::Series da = a.derivative();
    speed_sq = speed_sq + da * da;
    comp.push_back(std::move(a));
  }
  if (!(speed_sq[0] > kRegularityEps * kRegularityEps))
    throw DegenerateError("non-regular point at parameter " + std::to_string(t));
  const detail::Series inv = speed_sq.sqrt().integral().reversion();
  j.position = raw[0];
  for (int k = 1; k <= order; ++k) j.d.emplace_back(dim_);
  for (int i = 0; i < dim_; ++i) {
    detail::Series a = comp[i];
    a[0] = 0.0;
    const detail::Series composed = a.compose(inv);
    for (int k = 1; k <= order; ++k) j.d[k - 1][i] = factorial(k) * composed[k];
  }
  return j;
}

Curve Curve::restricted(Interval sub) const {
  const double slack = 1e-12 * std::max(1.0, domain_.length());
  if (!(sub.lo < sub.hi) || !domain_.contains(sub.lo, slack) || !domain_.contains(sub.hi, slack))
    throw std::invalid_argument("restriction must be a non-empty sub-interval of the domain");
  Curve c = *this;
  c.domain_ = {std::max(sub.lo, domain_.lo), std::min(sub.hi, domain_.hi)};
  // Stencils near the new ends can reach samples outside it, so the sampled
  // speed check is redone on the restricted domain.
  if (kind_ == Kind::Sampled) c.verify_unit_speed();
  return c;
}

Curve Curve::trimmed(double margin_fraction) const {
  if (margin_fraction < 0 || margin_fraction >= 0.5) throw std::invalid_argument("margin must be in [0, 0.5)");
  if (margin_fraction == 0) return *this;
  const double m = margin_fraction * domain_.length();
  return restricted({domain_.lo + m, domain_.hi - m});
}

double curve_length(const Curve& c) {
  const auto dom = c.domain();
  if (c.has_arc_length_map()) return dom.length();
  return numeric::adaptive_simpson([&](double s) { return c.jet(s, 1)[1].norm(); }, dom.lo, dom.hi, 1e-11);
}

Curve arclength_reparametrize(const Curve& c) {
  if (c.unit_speed()) return c;

  if (c.kind() == Curve::Kind::Analytic) {
    auto map = std::make_shared<detail::ArcLengthMap>();
    for (int i = 0; i < c.dim(); ++i) map->velocity.push_back(c.component_derivative(1, i));
    const Interval tdom = c.underlying_domain();
    const auto [t_min, v_min] = min_speed([&](double t) { return map->speed(t); }, tdom);
    if (v_min < kRegularityEps)
      throw DegenerateError("non-regular point at parameter " + std::to_string(t_min) +
                            " (speed " + std::to_string(v_min) + ")");
    map->t_nodes = numeric::linspace(tdom.lo, tdom.hi, kArcTableNodes);
    map->s_nodes.assign(kArcTableNodes, 0.0);
    const double panel_tol = 1e-10 / static_cast<double>(kArcTableNodes);
    for (std::size_t k = 1; k < kArcTableNodes; ++k)
      map->s_nodes[k] = map->s_nodes[k - 1] + numeric::adaptive_simpson([&](double t) { return map->speed(t); },
                                                                         map->t_nodes[k - 1], map->t_nodes[k],
                                                                         panel_tol);
    map->inverse = numeric::CubicHermite(map->s_nodes, map->t_nodes);

    Curve out = c;
    out.arc_ = std::move(map);
    out.domain_ = {0.0, out.arc_->s_nodes.back()};
    out.verify_unit_speed();
    return out;
  }

  // Sampled: arc length on the nodes, then resample uniformly.
  const auto& t = c.sample_parameters();
  const Interval dom = c.domain();
  std::vector<double> nodes, speeds;
  for (double tk : t) {
    if (tk < dom.lo || tk > dom.hi) continue;
    nodes.push_back(tk);
    speeds.push_back(c.jet(tk, 1)[1].norm());
  }
  if (nodes.size() < 2) throw std::invalid_argument("sampled curve domain holds fewer than two samples");
  const auto worst = std::min_element(speeds.begin(), speeds.end());
  if (*worst < kRegularityEps)
    throw DegenerateError("non-regular point at parameter " + std::to_string(nodes[worst - speeds.begin()]));
  const auto s_nodes = numeric::cumulative_integral(nodes, speeds);
  const numeric::CubicHermite forward(nodes, s_nodes, speeds);
  const numeric::CubicHermite inverse(s_nodes, nodes);
  const auto s_grid = numeric::linspace(0.0, s_nodes.back(), nodes.size());
  std::vector<Vec> pts;
  pts.reserve(s_grid.size());
  for (double s : s_grid) {
    double tt = inverse(s);
    for (int it = 0; it < 3; ++it) tt -= (forward(tt) - s) / forward.derivative(tt);
    pts.push_back(c.position(std::clamp(tt, dom.lo, dom.hi)));
  }
  return Curve::sampled(s_grid, std::move(pts));
}

}  // namespace helixkit
