#include <cmath>

#include <gtest/gtest.h>

#include "helixkit/curve.hpp"
#include "support/corpus.hpp"

using namespace helixkit;
namespace ht = helixkit::testing;

TEST(AnalyticCurve, UnitSpeedIsVerifiedNotAssumed) {
  const Curve ex = ht::sine_slant_helix(M_PI / 3, 2 * M_PI / 3);
  EXPECT_TRUE(ex.unit_speed());
  EXPECT_LT(ex.unit_speed_deviation(), 1e-12);
  const Curve raw = ht::circular_helix_raw(3, 4, 2 * M_PI);
  EXPECT_FALSE(raw.unit_speed());
  EXPECT_NEAR(raw.unit_speed_deviation(), 4.0, 1e-12);
}

TEST(AnalyticCurve, RejectsBadInput) {
  EXPECT_THROW(Curve::analytic({parse("s")}, {0, 1}), std::invalid_argument);
  EXPECT_THROW(Curve::analytic({parse("s"), parse("0")}, {1, 0}), std::invalid_argument);
  const Curve c = ht::sine_slant_helix(1.2, 1.9);
  EXPECT_THROW(c.position(2.5), std::out_of_range);
  EXPECT_THROW(c.jet(1.0, 2), std::out_of_range);
}

TEST(AnalyticCurve, JetIsSymbolic) {
  const Curve c = ht::sine_slant_helix(1.2, 1.9);
  const auto j = c.jet(1.5, 3);
  EXPECT_EQ(j.order(), 3);
  EXPECT_NEAR(j[1][2], 0.8 * std::cos(4.5), 1e-15);
  EXPECT_NEAR(j[2][2], -2.4 * std::sin(4.5), 1e-15);
  EXPECT_NEAR(j[3][2], -7.2 * std::cos(4.5), 1e-14);
  EXPECT_EQ(c.max_jet_order(), 5);
}

TEST(Reparametrize, CircularHelixByArcLength) {
  const Curve h = arclength_reparametrize(ht::circular_helix_raw(3, 4, 2 * M_PI));
  EXPECT_TRUE(h.unit_speed());
  EXPECT_TRUE(h.has_arc_length_map());
  EXPECT_NEAR(h.domain().hi, 10 * M_PI, 1e-9);
  EXPECT_NEAR(curve_length(h), 10 * M_PI, 1e-9);
  for (double s : {0.0, 1.0, 7.0, 20.0, 10 * M_PI}) {
    EXPECT_NEAR(h.underlying_parameter(s), s / 5, 1e-10);
    const Vec p = h.position(s);
    EXPECT_NEAR(p[0], 3 * std::cos(s / 5), 1e-9);
    EXPECT_NEAR(p[2], 4 * s / 5, 1e-9);
    const auto j = h.jet(s, 4);
    EXPECT_NEAR(j[1].norm(), 1.0, 1e-10);
    EXPECT_NEAR(j[2].norm(), 3.0 / 25, 1e-10);
    EXPECT_NEAR(j[3].norm(), 3.0 / 125, 1e-10);
  }
}

TEST(Reparametrize, UnitSpeedCurvesPassThrough) {
  const Curve c = ht::sine_slant_helix(1.2, 1.9);
  const Curve r = arclength_reparametrize(c);
  EXPECT_FALSE(r.has_arc_length_map());
  EXPECT_EQ(r.domain().lo, c.domain().lo);
}

TEST(Reparametrize, NonRegularPointIsAnError) {
  // (t^3, t^2) has a cusp at t = 0; the speed there is exactly zero.
  const Curve cusp = Curve::analytic({parse("t^3", {"t"}), parse("t^2", {"t"})}, {-1, 1}, "t");
  EXPECT_THROW(arclength_reparametrize(cusp), DegenerateError);
  const Curve stall = Curve::analytic({parse("t^3", {"t"}), parse("0", {"t"})}, {-1, 1.3}, "t");
  EXPECT_THROW(arclength_reparametrize(stall), DegenerateError);
}

TEST(SampledCurve, ValidationAndDerivatives) {
  EXPECT_THROW(Curve::sampled({0, 1, 2}, {Vec::Zero(2), Vec::Zero(2), Vec::Zero(2)}), std::invalid_argument);
  std::vector<double> s(12);
  std::vector<Vec> p(12, Vec::Zero(2));
  for (int i = 0; i < 12; ++i) s[i] = i;
  s[5] = s[4];
  EXPECT_THROW(Curve::sampled(s, p), std::invalid_argument);

  const Curve c = ht::sine_slant_helix_sampled(1.0, 2.0, 401);
  EXPECT_TRUE(c.unit_speed());
  EXPECT_EQ(c.max_jet_order(), 4);
  const Curve exact = ht::sine_slant_helix(1.0, 2.0);
  for (double t : {1.0, 1.2345, 1.5, 1.99}) {
    const auto a = c.jet(t, 3), b = exact.jet(t, 3);
    EXPECT_LT((c.position(t) - exact.position(t)).norm(), 1e-10);
    EXPECT_LT((a[1] - b[1]).norm(), 1e-7);
    EXPECT_LT((a[2] - b[2]).norm(), 5e-5);  // one-sided stencil at t = 1, |α''| ≈ 4
    EXPECT_LT((a[3] - b[3]).norm(), 1e-3);
  }
}

TEST(SampledCurve, ReparametrizeResamplesUniformly) {
  std::vector<double> t;
  std::vector<Vec> pts;
  for (int i = 0; i <= 400; ++i) {
    const double u = 2 * M_PI * i / 400.0;
    Vec p(3);
    p << 3 * std::cos(u), 3 * std::sin(u), 4 * u;
    t.push_back(u);
    pts.push_back(p);
  }
  const Curve c = Curve::sampled(t, pts);
  EXPECT_FALSE(c.unit_speed());
  const Curve r = arclength_reparametrize(c);
  EXPECT_TRUE(r.unit_speed());
  EXPECT_NEAR(r.domain().length(), 10 * M_PI, 1e-6);
  EXPECT_EQ(r.sample_parameters().size(), 401u);
}

TEST(Restriction, TrimmedKeepsSamplesAndShrinksDomain) {
  const Curve c = ht::sine_slant_helix_sampled(1.0, 2.0, 101);
  const Curve t = c.trimmed(0.1);
  EXPECT_NEAR(t.domain().lo, 1.1, 1e-12);
  EXPECT_NEAR(t.domain().hi, 1.9, 1e-12);
  EXPECT_EQ(t.sample_parameters().size(), 101u);
  EXPECT_THROW(c.trimmed(0.5), std::invalid_argument);
  EXPECT_THROW(c.restricted({0.5, 1.5}), std::invalid_argument);
}
