#include "helixkit/helix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "helixkit/numeric.hpp"

namespace helixkit {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Row = std::vector<double>;

bool frame_complete(const FrenetApparatus& a) {
  return !a.degenerate_rank || *a.degenerate_rank >= a.dim() - 1;
}

// Valid samples: complete frame and every recursion divisor k_2..k_{n-1}
// at least kMaskEps in magnitude.
std::vector<bool> base_mask(const std::vector<FrenetApparatus>& grid) {
  std::vector<bool> valid(grid.size(), true);
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const auto& a = grid[j];
    if (!frame_complete(a)) {
      valid[j] = false;
      continue;
    }
    for (int i = 2; i <= a.dim() - 1; ++i)
      if (std::abs(a.k(i)) < kMaskEps) valid[j] = false;
  }
  return valid;
}

std::vector<double> grid_s(const std::vector<FrenetApparatus>& grid) {
  std::vector<double> s(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) s[j] = grid[j].s;
  return s;
}

// d/ds of a tabulated function using 5-point stencils confined to runs of
// consecutive valid samples. Samples in runs shorter than 3 lose validity.
Row masked_derivative(const std::vector<double>& s, const Row& f, std::vector<bool>& valid) {
  Row out(f.size(), kNaN);
  std::vector<bool> next = valid;
  std::size_t j = 0;
  while (j < f.size()) {
    if (!valid[j]) {
      ++j;
      continue;
    }
    std::size_t end = j;
    while (end < f.size() && valid[end]) ++end;
    const std::size_t len = end - j;
    if (len < 3) {
      for (std::size_t k = j; k < end; ++k) next[k] = false;
    } else {
      const std::span<const double> ss(s.data() + j, len);
      const std::span<const double> ff(f.data() + j, len);
      for (std::size_t k = 0; k < len; ++k) out[j + k] = numeric::grid_derivative(ss, ff, k, 1, 5);
    }
    j = end;
  }
  valid = std::move(next);
  return out;
}

double fraction_masked(const std::vector<bool>& valid) {
  const auto bad = std::count(valid.begin(), valid.end(), false);
  return valid.empty() ? 1.0 : static_cast<double>(bad) / static_cast<double>(valid.size());
}

void require_reliable(const std::vector<bool>& valid, const char* what) {
  const double f = fraction_masked(valid);
  if (f > 0.5)
    throw UnreliableError(std::string(what) + ": " + std::to_string(static_cast<int>(std::round(100 * f))) +
                          "% of samples masked (near-zero curvature)");
}

// Runs X_i = (k_{i-2} X_{i-2} + X'_{i-1}) / k_{i-1} for i = 3..n from rows
// X_1, X_2. Row index is i-1.
void run_recursion(const std::vector<FrenetApparatus>& grid, const std::vector<double>& s,
                   std::vector<Row>& rows, std::vector<bool>& valid, int n) {
  const std::size_t N = grid.size();
  for (int i = 3; i <= n; ++i) {
    Row next(N, kNaN);
    if (i == 3) {
      for (std::size_t j = 0; j < N; ++j)
        if (valid[j]) next[j] = grid[j].k(1) * rows[0][j] / grid[j].k(2);
      // X_2 is constant in both recursions (G_2 = 1, G*_2 = 0)
    } else {
      const Row d = masked_derivative(s, rows[i - 2], valid);
      for (std::size_t j = 0; j < N; ++j)
        if (valid[j]) next[j] = (grid[j].k(i - 2) * rows[i - 3][j] + d[j]) / grid[j].k(i - 1);
    }
    rows.push_back(std::move(next));
  }
}

HelixFunctions pack(FunctionKind kind, const std::vector<double>& s, const std::vector<Row>& rows,
                    const std::vector<bool>& valid) {
  HelixFunctions out;
  out.kind = kind;
  out.s = s;
  out.valid = valid;
  out.masked_fraction = fraction_masked(valid);
  out.values.assign(s.size(), Row(rows.size(), kNaN));
  for (std::size_t j = 0; j < s.size(); ++j)
    if (valid[j])
      for (std::size_t i = 0; i < rows.size(); ++i) out.values[j][i] = rows[i][j];
  return out;
}

Vec normalized(const Vec& v) {
  const double n = v.norm();
  return n > 0 ? Vec(v / n) : v;
}

struct AxisField {
  Vec axis;
  double residual = 0.0;
};

AxisField summarize_field(const std::vector<Vec>& units) {
  Vec sum = Vec::Zero(units.front().size());
  for (const auto& u : units) sum += u;
  AxisField f;
  f.axis = normalized(sum);
  for (const auto& u : units) f.residual = std::max(f.residual, angle_between(u, f.axis));
  return f;
}

// Least-variance direction of a set of unit vectors.
Vec fitted_axis(const std::vector<Vec>& vs, const Vec& toward) {
  const Eigen::Index n = vs.front().size();
  Vec mu = Vec::Zero(n);
  for (const auto& v : vs) mu += v;
  mu /= static_cast<double>(vs.size());
  Mat cov = Mat::Zero(n, n);
  for (const auto& v : vs) cov += (v - mu) * (v - mu).transpose();
  Eigen::SelfAdjointEigenSolver<Mat> eig(cov);
  Vec a = eig.eigenvectors().col(0);
  if (a.dot(toward) < 0) a = -a;
  return a;
}

}  // namespace

double HelixFunctions::sum_of_squares(std::size_t j) const {
  if (!valid[j]) return kNaN;
  double acc = 0.0;
  for (double v : values[j]) acc += v * v;
  return acc;
}

double angle_between(const Vec& a, const Vec& b) {
  const Vec ua = normalized(a), ub = normalized(b);
  return 2.0 * std::atan2((ua - ub).norm(), (ua + ub).norm());
}

double line_angle(const Vec& a, const Vec& b) {
  const double t = angle_between(a, b);
  return std::min(t, M_PI - t);
}

HelixFunctions slant_functions(const std::vector<FrenetApparatus>& grid) {
  if (grid.size() < 3) throw std::invalid_argument("slant_functions needs at least 3 samples");
  const int n = grid.front().dim();
  const std::size_t N = grid.size();
  const auto s = grid_s(grid);
  std::vector<bool> valid = base_mask(grid);
  require_reliable(valid, "slant functions");

  Row k1(N);
  for (std::size_t j = 0; j < N; ++j) k1[j] = grid[j].k(1);
  Row I = numeric::cumulative_integral(s, k1);
  const double shift = numeric::mean(I);
  for (double& x : I) x -= shift;

  // G_i(c) = P_i + c Q_i: the recursion is linear and c enters through G_1.
  std::vector<Row> P{I, Row(N, 1.0)};
  std::vector<Row> Q{Row(N, 1.0), Row(N, 0.0)};
  std::vector<bool> valid_q = valid;
  run_recursion(grid, s, P, valid, n);
  run_recursion(grid, s, Q, valid_q, n);
  for (std::size_t j = 0; j < N; ++j) valid[j] = valid[j] && valid_q[j];
  require_reliable(valid, "slant functions");

  Row a, b, q;
  double max_abs_I = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    if (!valid[j]) continue;
    double aj = 0, bj = 0, qj = 0;
    for (int i = 0; i < n; ++i) {
      aj += P[i][j] * P[i][j];
      bj += 2.0 * P[i][j] * Q[i][j];
      qj += Q[i][j] * Q[i][j];
    }
    a.push_back(aj);
    b.push_back(bj);
    q.push_back(qj);
    max_abs_I = std::max(max_abs_I, std::abs(I[j]));
  }
  auto variance = [&](double c) {
    Row v(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) v[j] = a[j] + c * (b[j] + c * q[j]);
    const double sd = numeric::stddev(v);
    return sd * sd;
  };
  const double bound = max_abs_I > 0 ? 10.0 * max_abs_I : 1.0;
  const auto scan = numeric::linspace(-bound, bound, 2001);
  std::size_t best = 0;
  double best_v = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < scan.size(); ++k) {
    const double v = variance(scan[k]);
    if (v < best_v) {
      best_v = v;
      best = k;
    }
  }
  const double lo = scan[best == 0 ? 0 : best - 1];
  const double hi = scan[std::min(best + 1, scan.size() - 1)];
  const double c = numeric::golden_section_minimize(variance, lo, hi, 1e-10);

  std::vector<Row> G(n, Row(N, kNaN));
  for (int i = 0; i < n; ++i)
    for (std::size_t j = 0; j < N; ++j)
      if (valid[j]) G[i][j] = P[i][j] + c * Q[i][j];
  HelixFunctions out = pack(FunctionKind::Slant, s, G, valid);
  out.integration_constant = c;
  return out;
}

HelixFunctions general_functions(const std::vector<FrenetApparatus>& grid) {
  if (grid.size() < 3) throw std::invalid_argument("general_functions needs at least 3 samples");
  const int n = grid.front().dim();
  const std::size_t N = grid.size();
  const auto s = grid_s(grid);
  std::vector<bool> valid = base_mask(grid);
  require_reliable(valid, "general helix functions");
  std::vector<Row> G{Row(N, 1.0), Row(N, 0.0)};
  run_recursion(grid, s, G, valid, n);
  G.resize(n);
  require_reliable(valid, "general helix functions");
  return pack(FunctionKind::General, s, G, valid);
}

HelixFunctions harmonic_curvatures(const std::vector<FrenetApparatus>& grid) {
  if (grid.size() < 3) throw std::invalid_argument("harmonic_curvatures needs at least 3 samples");
  const int n = grid.front().dim();
  const std::size_t N = grid.size();
  const auto s = grid_s(grid);
  std::vector<bool> valid = base_mask(grid);
  require_reliable(valid, "harmonic curvatures");
  std::vector<Row> H{Row(N, 0.0)};
  if (n >= 3) {
    Row h1(N, kNaN);
    for (std::size_t j = 0; j < N; ++j)
      if (valid[j]) h1[j] = grid[j].k(1) / grid[j].k(2);
    H.push_back(std::move(h1));
  }
  for (int i = 2; i <= n - 2; ++i) {
    const Row d = masked_derivative(s, H[i - 1], valid);
    Row next(N, kNaN);
    for (std::size_t j = 0; j < N; ++j)
      if (valid[j]) next[j] = (d[j] + H[i - 2][j] * grid[j].k(i)) / grid[j].k(i + 1);
    H.push_back(std::move(next));
  }
  require_reliable(valid, "harmonic curvatures");
  return pack(FunctionKind::Harmonic, s, H, valid);
}

const char* to_string(Classification c) {
  switch (c) {
    case Classification::Neither: return "neither";
    case Classification::General: return "general-helix";
    case Classification::Slant: return "slant-helix";
    case Classification::Both: return "both";
  }
  return "neither";
}

const char* to_string(ReportStatus s) {
  switch (s) {
    case ReportStatus::Ok: return "ok";
    case ReportStatus::Degenerate: return "degenerate";
    case ReportStatus::Unreliable: return "unreliable";
  }
  return "ok";
}

namespace {

// Builds unit fields Σ coeff_i V_{slot_i} over valid samples and fills the
// axis/constancy statistics of a path.
void fill_path(PathResult& path, const std::vector<FrenetApparatus>& grid, const HelixFunctions& fns,
               const std::vector<int>& slots, const ClassifyOptions& opts) {
  std::vector<Vec> units;
  Row scalar;
  for (std::size_t j = 0; j < grid.size(); ++j) {
    if (!fns.valid[j]) continue;
    Vec field = Vec::Zero(grid[j].dim());
    for (std::size_t i = 0; i < slots.size(); ++i)
      if (slots[i] > 0) field += fns.values[j][i] * grid[j].V(slots[i]);
    if (fns.kind != FunctionKind::Slant) field += grid[j].V(1);
    const double norm2 = field.squaredNorm();
    scalar.push_back(norm2);
    units.push_back(field / std::sqrt(norm2));
  }
  const AxisField f = summarize_field(units);
  path.evaluated = true;
  path.axis = f.axis;
  path.axis_residual = f.residual;
  path.C = numeric::mean(scalar);
  path.constancy_residual = numeric::relative_stddev(scalar);
  path.cos_theta = 1.0 / std::sqrt(path.C);
  path.masked_fraction = fns.masked_fraction;
  path.detected = path.axis_residual <= opts.tol_axis && path.constancy_residual <= opts.tol_const;
}

}  // namespace

HelixReport classify_grid(const std::vector<FrenetApparatus>& grid, const ClassifyOptions& opts) {
  HelixReport r;
  r.samples = static_cast<int>(grid.size());
  if (grid.empty()) throw std::invalid_argument("classify: empty grid");
  const int n = grid.front().dim();

  const auto complete = std::count_if(grid.begin(), grid.end(), frame_complete);
  if (complete == 0) {
    r.status = ReportStatus::Degenerate;
    r.message = "Frenet frame degenerate at every sample (k_" +
                std::to_string(grid.front().degenerate_rank.value_or(1)) + " below threshold)";
    r.masked_fraction = 1.0;
    return r;
  }

  // Slant: B = Σ G_i V_i.
  try {
    const HelixFunctions G = slant_functions(grid);
    std::vector<int> slots(n);
    for (int i = 0; i < n; ++i) slots[i] = i + 1;
    fill_path(r.slant, grid, G, slots, opts);
    r.slant.integration_constant = G.integration_constant;
  } catch (const UnreliableError& e) {
    r.slant.message = e.what();
  }

  // General: A = V_1 + Σ H_i V_{i+2}, cross-checked with U = V_1 + Σ G*_i V_i.
  try {
    const HelixFunctions H = harmonic_curvatures(grid);
    std::vector<int> slots(H.values.front().size());
    for (std::size_t i = 0; i < slots.size(); ++i) slots[i] = i == 0 ? 0 : static_cast<int>(i) + 2;
    fill_path(r.general, grid, H, slots, opts);

    const HelixFunctions Gs = general_functions(grid);
    PathResult gstar;
    std::vector<int> gslots(n, 0);
    for (int i = 3; i <= n; ++i) gslots[i - 1] = i;
    fill_path(gstar, grid, Gs, gslots, opts);
    r.general.axis_gstar = gstar.axis;
    r.general.axis_residual_gstar = gstar.axis_residual;
    r.general.angle_harmonic_gstar = angle_between(r.general.axis, gstar.axis);
  } catch (const UnreliableError& e) {
    r.general.message = e.what();
  }

  if (opts.axis_hint) {
    HintResult h;
    h.direction = normalized(*opts.axis_hint);
    Row t, nn;
    std::vector<Vec> v1, v2;
    for (const auto& a : grid) {
      if (!frame_complete(a)) continue;
      t.push_back(a.V(1).dot(h.direction));
      nn.push_back(a.V(2).dot(h.direction));
      v1.push_back(a.V(1));
      v2.push_back(a.V(2));
    }
    h.tangent_mean = numeric::mean(t);
    h.tangent_std = numeric::stddev(t);
    h.normal_mean = numeric::mean(nn);
    h.normal_std = numeric::stddev(nn);
    h.general = h.tangent_std <= opts.tol_hint;
    h.slant = h.normal_std <= opts.tol_hint;
    h.fitted_tangent_axis = fitted_axis(v1, h.direction);
    h.fitted_normal_axis = fitted_axis(v2, h.direction);
    h.fitted_tangent_angle = angle_between(h.fitted_tangent_axis, h.direction);
    h.fitted_normal_angle = angle_between(h.fitted_normal_axis, h.direction);
    r.hint = std::move(h);
  }

  const bool slant = r.slant.detected || (r.hint && r.hint->slant);
  const bool general = r.general.detected || (r.hint && r.hint->general);
  r.classification = slant && general ? Classification::Both
                     : slant          ? Classification::Slant
                     : general        ? Classification::General
                                      : Classification::Neither;

  auto take = [&](const PathResult& p) {
    r.cos_theta = p.cos_theta;
    r.C = p.C;
    r.axis = p.axis;
    r.constancy_residual = p.constancy_residual;
    r.axis_residual = p.axis_residual;
    r.masked_fraction = p.masked_fraction;
  };
  auto take_hint = [&](double mean, double sd, double fitted_angle) {
    r.cos_theta = mean;
    r.C = 1.0 / (mean * mean);
    r.axis = r.hint->direction;
    r.constancy_residual = sd;
    r.axis_residual = fitted_angle;
    r.masked_fraction = 1.0 - static_cast<double>(complete) / static_cast<double>(grid.size());
  };
  if (r.slant.detected)
    take(r.slant);
  else if (r.general.detected)
    take(r.general);
  else if (r.hint && r.hint->slant)
    take_hint(r.hint->normal_mean, r.hint->normal_std, r.hint->fitted_normal_angle);
  else if (r.hint && r.hint->general)
    take_hint(r.hint->tangent_mean, r.hint->tangent_std, r.hint->fitted_tangent_angle);
  else if (r.slant.evaluated)
    take(r.slant);
  else if (r.general.evaluated)
    take(r.general);
  else
    r.masked_fraction = std::max(r.slant.masked_fraction, r.general.masked_fraction);

  if (r.classification == Classification::Neither && !r.slant.evaluated && !r.general.evaluated) {
    r.status = ReportStatus::Unreliable;
    r.message = r.slant.message + "; " + r.general.message;
  }
  return r;
}

HelixReport classify(const Curve& c, const ClassifyOptions& opts) {
  std::vector<FrenetApparatus> grid;
  try {
    grid = frenet_grid(c, opts.grid, opts.margin, opts.frenet);
  } catch (const DegenerateError& e) {
    HelixReport r;
    r.status = ReportStatus::Degenerate;
    r.message = e.what();
    r.masked_fraction = 1.0;
    return r;
  }
  return classify_grid(grid, opts);
}

SlantInvariant slant_invariant_3d(const std::vector<FrenetApparatus>& grid) {
  if (grid.empty() || grid.front().dim() != 3)
    throw PreconditionError("slant invariant is defined for curves in E^3");
  const std::size_t N = grid.size();
  SlantInvariant out;
  out.s = grid_s(grid);
  out.sigma.assign(N, kNaN);
  out.valid.assign(N, true);
  for (std::size_t j = 0; j < N; ++j)
    if (!frame_complete(grid[j]) || grid[j].k(1) < kMaskEps) out.valid[j] = false;

  const bool analytic = std::all_of(grid.begin(), grid.end(), [](const auto& a) { return a.has_derivatives(); });
  Row ratio_d(N, kNaN);
  if (analytic) {
    for (std::size_t j = 0; j < N; ++j) {
      if (!out.valid[j]) continue;
      const auto& a = grid[j];
      ratio_d[j] = (a.dk(2) * a.k(1) - a.k(2) * a.dk(1)) / (a.k(1) * a.k(1));
    }
  } else {
    Row ratio(N, kNaN);
    for (std::size_t j = 0; j < N; ++j)
      if (out.valid[j]) ratio[j] = grid[j].k(2) / grid[j].k(1);
    ratio_d = masked_derivative(out.s, ratio, out.valid);
  }
  Row vals;
  for (std::size_t j = 0; j < N; ++j) {
    if (!out.valid[j]) continue;
    const double k = grid[j].k(1), t = grid[j].k(2);
    const double w2 = k * k + t * t;
    out.sigma[j] = k * k / (w2 * std::sqrt(w2)) * ratio_d[j];
    vals.push_back(out.sigma[j]);
  }
  out.masked_fraction = fraction_masked(out.valid);
  if (out.masked_fraction > 0.5) throw UnreliableError("slant invariant: more than half of the samples masked");
  out.mean = numeric::mean(vals);
  out.stddev = numeric::stddev(vals);
  out.relative_stddev = numeric::relative_stddev(vals);
  return out;
}

IndicatrixFrame3d indicatrix_frame_3d(const FrenetApparatus& a) {
  if (a.dim() != 3) throw PreconditionError("indicatrix_frame_3d needs a curve in E^3");
  if (!a.has_derivatives()) throw PreconditionError("indicatrix_frame_3d needs curvature derivatives");
  const double k = a.k(1), t = a.k(2), dk = a.dk(1), dt = a.dk(2);
  const double w = std::sqrt(k * k + t * t);
  IndicatrixFrame3d f;
  f.T = a.V(2);
  f.N = (-k * a.V(1) + t * a.V(3)) / w;
  f.B = (t * a.V(1) + k * a.V(3)) / w;
  f.curvature = w / k;
  f.torsion = (k * dt - dk * t) / (k * w * w);
  return f;
}

Vec indicatrix_axis_3d(const std::vector<FrenetApparatus>& grid) {
  std::vector<Vec> units;
  for (const auto& a : grid) {
    if (!frame_complete(a) || a.k(1) < kMaskEps || !a.has_derivatives()) continue;
    const auto f = indicatrix_frame_3d(a);
    if (std::abs(f.torsion) < kMaskEps) continue;
    units.push_back(normalized(f.T + (f.curvature / f.torsion) * f.B));
  }
  if (units.empty()) throw UnreliableError("indicatrix axis: no usable samples");
  return summarize_field(units).axis;
}

Vec darboux_axis_3d(const std::vector<FrenetApparatus>& grid) {
  std::vector<Vec> units;
  for (const auto& a : grid) {
    if (a.dim() != 3) throw PreconditionError("darboux_axis_3d needs a curve in E^3");
    if (!frame_complete(a)) continue;
    units.push_back(normalized(a.k(2) * a.V(1) + a.k(1) * a.V(3)));
  }
  if (units.empty()) throw UnreliableError("Darboux axis: no usable samples");
  return summarize_field(units).axis;
}

Curve tangent_indicatrix(const Curve& c, const IndicatrixOptions& opts) {
  if (!c.unit_speed()) throw PreconditionError("tangent indicatrix requires a unit-speed curve");
  const int n = c.dim();
  const Interval dom = c.domain();
  FrenetOptions fo;
  fo.derivatives = false;

  if (c.is_analytic()) {
    for (double s : numeric::linspace(dom.lo, dom.hi, 257)) {
      const auto a = frenet_at(c, s, fo);
      if (std::abs(a.k(1)) < kCurvatureEps)
        throw DegenerateError("k_1 vanishes at s = " + std::to_string(s) + "; the indicatrix is not regular");
    }
    std::vector<Expression> beta;
    if (!c.has_arc_length_map()) {
      for (int i = 0; i < n; ++i) beta.push_back(c.component_derivative(1, i));
    } else {
      Expression speed2 = Expression::constant(0.0);
      for (int i = 0; i < n; ++i) speed2 = speed2 + pow(c.component_derivative(1, i), 2.0);
      const Expression speed = sqrt(speed2);
      for (int i = 0; i < n; ++i) beta.push_back(c.component_derivative(1, i) / speed);
    }
    return arclength_reparametrize(Curve::analytic(std::move(beta), c.underlying_domain(), c.parameter_name()));
  }

  // Sampled: ds_β = k_1 ds over every sample of the curve whose k_1 is
  // usable, so stencils near the ends of the returned domain stay centred.
  // By default β keeps the curve's own nodes (non-uniform in s_β): every
  // sample then sees the same stencil shape and the truncation error stays
  // smooth, which the indicatrix's own higher derivatives need.
  const auto& all = c.sample_parameters();
  const Curve full = Curve::sampled(all, c.sample_points());
  const double slack = 1e-9 * dom.length();
  std::vector<double> k1(all.size());
  std::vector<Vec> tangents(all.size());
  for (std::size_t j = 0; j < all.size(); ++j) {
    const auto jet = full.jet(all[j], n);
    k1[j] = std::abs(frenet_from_jet(jet, fo).k(1));
    tangents[j] = normalized(jet[1]);
  }
  std::size_t first = 0, last = all.size() - 1;
  while (first < all.size() && all[first] < dom.lo - slack) ++first;
  while (last > 0 && all[last] > dom.hi + slack) --last;
  for (std::size_t j = first; j <= last; ++j)
    if (k1[j] < kCurvatureEps)
      throw DegenerateError("k_1 vanishes at s = " + std::to_string(all[j]) + "; the indicatrix is not regular");
  std::size_t lo = first, hi = last;
  while (lo > 0 && k1[lo - 1] >= kCurvatureEps) --lo;
  while (hi + 1 < all.size() && k1[hi + 1] >= kCurvatureEps) ++hi;

  const std::vector<double> s_nodes(all.begin() + lo, all.begin() + hi + 1);
  const std::vector<double> k1_nodes(k1.begin() + lo, k1.begin() + hi + 1);
  auto sb_nodes = numeric::cumulative_integral(s_nodes, k1_nodes);
  const numeric::CubicHermite forward(s_nodes, sb_nodes, k1_nodes);
  const double sb_lo = forward(std::max(dom.lo, s_nodes.front()));
  const double sb_hi = forward(std::min(dom.hi, s_nodes.back()));
  for (double& x : sb_nodes) x -= sb_lo;

  if (opts.samples == 0) {
    std::vector<Vec> pts(tangents.begin() + lo, tangents.begin() + hi + 1);
    return Curve::sampled(std::move(sb_nodes), std::move(pts)).restricted({0.0, sb_hi - sb_lo});
  }

  // Uniform s_β resampling: invert the Hermite arc-length map and evaluate α'
  // off-node.
  const numeric::CubicHermite inverse(sb_nodes, s_nodes);
  const numeric::CubicHermite fwd(s_nodes, sb_nodes, k1_nodes);
  const double len = sb_hi - sb_lo;
  const double hb = len / static_cast<double>(opts.samples - 1);
  const long lo_extra = static_cast<long>(std::floor(-sb_nodes.front() / hb + 1e-9));
  const long hi_extra = static_cast<long>(std::floor((sb_nodes.back() - len) / hb + 1e-9));
  std::vector<double> sb;
  std::vector<Vec> pts;
  for (long k = -lo_extra; k < static_cast<long>(opts.samples) + hi_extra; ++k) {
    const double target = k == static_cast<long>(opts.samples) - 1 ? len : static_cast<double>(k) * hb;
    double s = inverse(target);
    for (int it = 0; it < 3; ++it) s -= (fwd(s) - target) / fwd.derivative(s);
    s = std::clamp(s, s_nodes.front(), s_nodes.back());
    sb.push_back(target);
    pts.push_back(normalized(full.jet(s, 1)[1]));
  }
  return Curve::sampled(std::move(sb), std::move(pts)).restricted({0.0, len});
}

SameAxisReport verify_same_axis(const Curve& c, const ClassifyOptions& opts, const IndicatrixOptions& iopts) {
  SameAxisReport out;
  out.curve = classify(c, opts);
  if (!out.curve.slant.detected)
    throw PreconditionError(std::string("curve is not a slant helix (classification ") +
                            to_string(out.curve.classification) + ", " + to_string(out.curve.status) + ")");
  const Curve beta = tangent_indicatrix(c.trimmed(opts.margin), iopts);
  out.indicatrix = classify(beta, opts);
  if (!out.indicatrix.general.evaluated)
    throw UnreliableError("indicatrix general-helix path failed: " + out.indicatrix.general.message +
                          out.indicatrix.message);
  out.axis_of_curve = out.curve.slant.axis;
  out.axis_of_indicatrix = out.indicatrix.general.axis;
  out.axis_of_indicatrix_gstar = out.indicatrix.general.axis_gstar;
  out.angle_between = angle_between(out.axis_of_curve, out.axis_of_indicatrix);
  out.angle_between_gstar = angle_between(out.axis_of_curve, out.axis_of_indicatrix_gstar);
  return out;
}

}  // namespace helixkit
