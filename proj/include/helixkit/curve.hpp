#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "helixkit/expr.hpp"
#include "helixkit/types.hpp"

namespace helixkit {

/// Derivatives d^1..d^k of a curve at one parameter value.
struct DerivativeJet {
  double s = 0.0;
  Vec position;
  std::vector<Vec> d;  // d[0] is the first derivative

  const Vec& operator[](int order) const { return d.at(order - 1); }
  int order() const { return static_cast<int>(d.size()); }
};

/// Default unit-speed tolerances.
inline constexpr double kUnitSpeedTolAnalytic = 1e-8;
inline constexpr double kUnitSpeedTolSampled = 1e-4;
/// Speed below which a point counts as non-regular.
inline constexpr double kRegularityEps = 1e-10;

namespace detail {
struct ArcLengthMap;
}

/// A parametric curve in E^n, analytic (one Expression per coordinate) or
/// sampled (ordered points at strictly increasing parameter values).
///
/// An analytic curve may carry an arc-length map: its parameter is then the
/// arc length s while the coordinate expressions stay in their original
/// parameter t. underlying_parameter() exposes t(s).
///
/// The unit_speed flag is always established by checking |d1| on a uniform
/// 1000-point grid; it is never taken from input metadata.
class Curve {
 public:
  enum class Kind { Analytic, Sampled };

  static Curve analytic(std::vector<Expression> components, Interval domain, std::string parameter = "s");
  static Curve sampled(std::vector<double> parameters, std::vector<Vec> points);

  int dim() const { return dim_; }
  Kind kind() const { return kind_; }
  bool is_analytic() const { return kind_ == Kind::Analytic; }
  Interval domain() const { return domain_; }
  bool unit_speed() const { return unit_speed_; }
  double unit_speed_tolerance() const {
    return kind_ == Kind::Analytic ? kUnitSpeedTolAnalytic : kUnitSpeedTolSampled;
  }
  /// max |‖d1‖ - 1| found by the verification grid.
  double unit_speed_deviation() const { return unit_speed_deviation_; }

  /// Highest derivative order jet() can deliver.
  int max_jet_order() const;

  Vec position(double s) const;
  /// Derivatives 1..order at s. Analytic curves differentiate symbolically
  /// (exact up to rounding); sampled curves use 5-point stencils for orders
  /// 1-2 and 7-point stencils for 3-4, one-sided near the ends.
  DerivativeJet jet(double s, int order) const;

  /// Parameter of the coordinate expressions at s (identity unless the curve
  /// carries an arc-length map).
  double underlying_parameter(double s) const;
  bool has_arc_length_map() const { return static_cast<bool>(arc_); }

  /// Same curve on [lo + f*L, hi - f*L]. Sampled curves keep all samples so
  /// stencils near the new ends stay centred; their unit-speed flag is
  /// re-established on the new domain.
  Curve trimmed(double margin_fraction) const;
  Curve restricted(Interval sub) const;

  // Analytic representation.
  const std::vector<Expression>& components() const { return components_; }
  const std::string& parameter_name() const { return parameter_; }
  /// order-th derivative expression of component i with respect to the
  /// underlying parameter (order 0 is the component itself).
  const Expression& component_derivative(int order, int i) const;
  /// Interval of the underlying parameter spanned by domain().
  Interval underlying_domain() const;

  // Sampled representation.
  const std::vector<double>& sample_parameters() const { return params_; }
  const std::vector<Vec>& sample_points() const { return points_; }

 private:
  friend Curve arclength_reparametrize(const Curve& c);

  void verify_unit_speed();
  std::vector<Vec> raw_derivatives(double t, int order) const;

  Kind kind_ = Kind::Analytic;
  int dim_ = 0;
  Interval domain_;
  bool unit_speed_ = false;
  double unit_speed_deviation_ = 0.0;

  std::vector<Expression> components_;
  std::vector<std::vector<Expression>> derivs_;  // [order][component]
  std::string parameter_ = "s";
  std::shared_ptr<const detail::ArcLengthMap> arc_;

  std::vector<double> params_;
  std::vector<Vec> points_;
};

/// Reparametrises a regular curve by arc length.
///
/// Analytic curves: cumulative arc length by adaptive Simpson on ‖c'‖
/// (tolerance 1e-10) at 1024 table nodes, inverted with monotone cubic
/// interpolation plus Newton refinement. The returned curve shares the
/// original expressions. Sampled curves are resampled at uniform arc length
/// with the same number of points. A curve that is already unit speed is
/// returned unchanged.
///
/// Throws DegenerateError when ‖c'‖ < 1e-10 somewhere on the verification grid.
Curve arclength_reparametrize(const Curve& c);

/// Arc length of the curve over its domain.
double curve_length(const Curve& c);

}  // namespace helixkit
