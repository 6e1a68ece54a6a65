#include "support/corpus.hpp"

#include <cmath>
#include <cstdio>

#include "helixkit/expr.hpp"
#include "helixkit/helix.hpp"

namespace helixkit::testing {

namespace {

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string("(") + buf + ")";
}

Curve from_strings(const std::vector<std::string>& comps, Interval dom, const std::string& var = "s") {
  std::vector<Expression> e;
  for (const auto& c : comps) e.push_back(parse(c, {var}));
  return Curve::analytic(std::move(e), dom, var);
}

}  // namespace

Curve sine_slant_helix(double lo, double hi) {
  return from_strings({"(2/5)*sin(2*s) - (1/40)*sin(8*s)", "-(2/5)*cos(2*s) + (1/40)*cos(8*s)", "(4/15)*sin(3*s)"},
                      {lo, hi});
}

Curve sine_slant_helix_sampled(double lo, double hi, std::size_t count) {
  std::vector<double> s;
  std::vector<Vec> pts;
  for (std::size_t i = 0; i < count; ++i) {
    const double t = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    Vec p(3);
    p << 0.4 * std::sin(2 * t) - std::sin(8 * t) / 40, -0.4 * std::cos(2 * t) + std::cos(8 * t) / 40,
        4.0 / 15 * std::sin(3 * t);
    s.push_back(t);
    pts.push_back(p);
  }
  return Curve::sampled(std::move(s), std::move(pts));
}

double sine_slant_helix_curvature(double s) { return -4 * std::sin(3 * s); }
double sine_slant_helix_torsion(double s) { return 4 * std::cos(3 * s); }

Vec sine_slant_helix_indicatrix(double s) {
  Vec b(3);
  b << 0.8 * std::cos(2 * s) - 0.2 * std::cos(8 * s), 0.8 * std::sin(2 * s) - 0.2 * std::sin(8 * s),
      0.8 * std::cos(3 * s);
  return b;
}

Curve circular_helix(double a, double b, double length) {
  const double c = std::sqrt(a * a + b * b);
  return from_strings({num(a) + "*cos(s/" + num(c) + ")", num(a) + "*sin(s/" + num(c) + ")", num(b / c) + "*s"},
                      {0.0, length});
}

Curve circular_helix_raw(double a, double b, double t_hi) {
  return from_strings({num(a) + "*cos(t)", num(a) + "*sin(t)", num(b) + "*t"}, {0.0, t_hi}, "t");
}

Curve planar_circle(double r, double length) {
  return from_strings({num(r) + "*cos(s/" + num(r) + ")", num(r) + "*sin(s/" + num(r) + ")", "0"}, {0.0, length});
}

Curve straight_line(double length) { return from_strings({"(3/5)*s", "(4/5)*s", "0"}, {0.0, length}); }

Curve generic_curve() { return arclength_reparametrize(from_strings({"t", "t^2", "t^3"}, {0.2, 1.2}, "t")); }

SynthesizedHelix synthesize_e4_slant_helix(double lo, double hi, double spacing, double rk_step) {
  SynthesizedHelix h;
  constexpr double C = 6.0;
  h.k1 = [](double) { return 0.5; };
  h.G1 = [](double s) { return 0.5 * s; };
  h.G3 = [](double s) { return 0.5 + 0.2 * s; };
  h.G4 = [G1 = h.G1, G3 = h.G3](double s) { return std::sqrt(C - 1.0 - G1(s) * G1(s) - G3(s) * G3(s)); };
  h.k2 = [G1 = h.G1, G3 = h.G3](double s) { return 0.5 * G1(s) / G3(s); };
  h.k3 = [k2 = h.k2, G4 = h.G4](double s) { return (k2(s) + 0.2) / G4(s); };

  // State: position and V_1..V_4 (20 numbers).
  using State = std::vector<Vec>;
  auto rhs = [&](double s, const State& y) {
    const double a = h.k1(s), b = h.k2(s), c = h.k3(s);
    return State{y[1], a * y[2], -a * y[1] + b * y[3], -b * y[2] + c * y[4], -c * y[3]};
  };
  auto axpy = [](const State& y, double t, const State& k) {
    State out = y;
    for (std::size_t i = 0; i < y.size(); ++i) out[i] += t * k[i];
    return out;
  };
  State y{Vec::Zero(4), Vec::Unit(4, 0), Vec::Unit(4, 1), Vec::Unit(4, 2), Vec::Unit(4, 3)};
  const long per_sample = std::lround(spacing / rk_step);
  const long samples = std::lround((hi - lo) / spacing) + 1;
  const double dt = spacing / static_cast<double>(per_sample);
  for (long j = 0; j < samples; ++j) {
    const double s = lo + static_cast<double>(j) * spacing;
    h.s.push_back(s);
    h.points.push_back(y[0]);
    h.frames.push_back({y[1], y[2], y[3], y[4]});
    if (j + 1 == samples) break;
    for (long k = 0; k < per_sample; ++k) {
      const double t = s + static_cast<double>(k) * dt;
      const State k1 = rhs(t, y);
      const State k2 = rhs(t + dt / 2, axpy(y, dt / 2, k1));
      const State k3 = rhs(t + dt / 2, axpy(y, dt / 2, k2));
      const State k4 = rhs(t + dt, axpy(y, dt, k3));
      for (std::size_t i = 0; i < y.size(); ++i) y[i] += dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    }
  }
  // Frame is the identity at s = lo, so L has components G_i(lo).
  Vec L(4);
  L << h.G1(lo), 1.0, h.G3(lo), h.G4(lo);
  h.axis = L / L.norm();
  h.cos_theta = 1.0 / std::sqrt(C);
  return h;
}

Curve sampled_curve(const SynthesizedHelix& h) { return Curve::sampled(h.s, h.points); }

std::vector<CorpusEntry> equivalence_corpus() {
  std::vector<CorpusEntry> out;
  out.push_back({"sine-slant-helix", sine_slant_helix(M_PI / 3, 2 * M_PI / 3), true, false});
  out.push_back({"sine-slant-helix-sampled", sine_slant_helix_sampled(M_PI / 3, 2 * M_PI / 3, 801), true, false});
  out.push_back({"helix-3-4", arclength_reparametrize(circular_helix_raw(3, 4, 2 * M_PI)), false, true});
  out.push_back({"helix-1-2", circular_helix(1, 2, 10.0), false, true});
  out.push_back({"planar-circle", planar_circle(2.0, 10.0), false, false});
  out.push_back({"twisted-cubic", generic_curve(), false, false});
  out.push_back({"e4-slant-helix", sampled_curve(synthesize_e4_slant_helix()), true, false});
  return out;
}

double indicatrix_curvature_mismatch(const Curve& curve, const Curve& beta, int points) {
  auto mismatch = [&](double s, double sb) {
    const auto expected = indicatrix_frame_3d(frenet_at(curve, s));
    const auto got = frenet_at(beta, sb);
    return std::hypot(expected.curvature - got.k(1), expected.torsion - got.k(2)) / std::hypot(got.k(1), got.k(2));
  };
  double worst = 0.0;
  if (beta.is_analytic()) {
    const Interval db = beta.domain();
    for (int k = 0; k < points; ++k) {
      const double sb = db.lo + (db.hi - db.lo) * k / (points - 1);
      const double t = beta.underlying_parameter(sb);
      double s = t;
      if (curve.has_arc_length_map()) {
        double lo = curve.domain().lo, hi = curve.domain().hi;
        for (int it = 0; it < 200; ++it) {
          const double mid = 0.5 * (lo + hi);
          (curve.underlying_parameter(mid) < t ? lo : hi) = mid;
        }
        s = 0.5 * (lo + hi);
      }
      worst = std::max(worst, mismatch(s, sb));
    }
    return worst;
  }
  // Sampled indicatrices keep the curve's nodes: walk both node lists from the domain starts.
  const auto& ap = curve.sample_parameters();
  const auto& bp = beta.sample_parameters();
  std::size_t a0 = 0, b0 = 0;
  while (a0 < ap.size() && ap[a0] < curve.domain().lo - 1e-12) ++a0;
  while (b0 < bp.size() && bp[b0] < beta.domain().lo - 1e-12) ++b0;
  for (std::size_t j = 0; a0 + j < ap.size() && b0 + j < bp.size() && bp[b0 + j] <= beta.domain().hi + 1e-12; ++j)
    worst = std::max(worst, mismatch(ap[a0 + j], bp[b0 + j]));
  return worst;
}

namespace {

Hypersurface surface(const std::vector<std::string>& comps, std::vector<Interval> box) {
  std::vector<Expression> e;
  for (const auto& c : comps) e.push_back(parse(c, {"u", "v"}));
  return Hypersurface(e, {"u", "v"}, std::move(box), Vec::Unit(3, 2));
}

}  // namespace

Hypersurface unit_cylinder() { return surface({"cos(u)", "sin(u)", "v"}, {{-10, 10}, {-10, 10}}); }
Hypersurface cone() { return surface({"v*cos(u)", "v*sin(u)", "v"}, {{-20, 20}, {0.1, 20}}); }
Hypersurface plane() { return surface({"u", "v", "0"}, {{-10, 10}, {-10, 10}}); }
Hypersurface sphere() {
  return surface({"sin(v)*cos(u)", "sin(v)*sin(u)", "cos(v)"}, {{-3, 3}, {0.3, 2.8}});
}

Vec cylinder_geodesic(double a, double b, double s) {
  Vec p(3);
  p << std::cos(a * s), std::sin(a * s), b * s;
  return p;
}

Vec cone_geodesic(double v0, double a, double b, double s) {
  // The development maps (u, v) to polar coordinates (√2 v, u/√2); the
  // geodesic is a straight line there.
  const double px = std::sqrt(2.0) * v0 + s * b, py = s * a;
  const double u = std::atan2(py, px) * std::sqrt(2.0), v = std::hypot(px, py) / std::sqrt(2.0);
  Vec p(3);
  p << v * std::cos(u), v * std::sin(u), v;
  return p;
}

}  // namespace helixkit::testing
