#pragma once

#include <optional>
#include <string>
#include <vector>

#include "helixkit/curve.hpp"
#include "helixkit/frenet.hpp"

namespace helixkit {

/// Samples whose recursion divisors fall below this are masked out.
inline constexpr double kMaskEps = 1e-6;
inline constexpr double kDefaultTolAxis = 1e-3;
inline constexpr double kDefaultTolConst = 1e-4;
inline constexpr double kDefaultTolHint = 1e-5;

enum class FunctionKind {
  Slant,     // G_1..G_n: G_1 = ∫k_1 + c, G_2 = 1, G_3 = (k_1/k_2)G_1, ...
  General,   // G*_1..G*_n: G*_1 = 1, G*_2 = 0, ...
  Harmonic,  // H_0..H_{n-2}: H_0 = 0, H_1 = k_1/k_2, ...
};

/// Recursively defined helix functions sampled on a Frenet grid.
struct HelixFunctions {
  FunctionKind kind = FunctionKind::Slant;
  std::vector<double> s;
  /// values[j] holds the functions at sample j (NaN where masked).
  std::vector<std::vector<double>> values;
  /// Slant kind only: G_1 = I + c, where I is the zero-mean antiderivative
  /// of k_1 over the grid.
  double integration_constant = 0.0;
  std::vector<bool> valid;
  double masked_fraction = 0.0;

  /// Σ_i values[j][i]^2 (NaN where masked).
  double sum_of_squares(std::size_t j) const;
};

/// Slant-helix functions. The integration constant minimises the variance of
/// ΣG_i² over valid samples (grid scan then golden section, 1e-10).
/// Throws UnreliableError when more than half of the samples are masked.
HelixFunctions slant_functions(const std::vector<FrenetApparatus>& grid);
HelixFunctions general_functions(const std::vector<FrenetApparatus>& grid);
HelixFunctions harmonic_curvatures(const std::vector<FrenetApparatus>& grid);

struct ClassifyOptions {
  int grid = 512;
  double margin = 0.0;
  double tol_axis = kDefaultTolAxis;
  double tol_const = kDefaultTolConst;
  /// Absolute std of ⟨V_1, d⟩ / ⟨V_2, d⟩ accepted by the axis-hint tests.
  double tol_hint = kDefaultTolHint;
  std::optional<Vec> axis_hint;
  FrenetOptions frenet;
};

enum class Classification { Neither, General, Slant, Both };
const char* to_string(Classification c);

enum class ReportStatus { Ok, Degenerate, Unreliable };
const char* to_string(ReportStatus s);

/// Outcome of one axis-field test (slant via G_i, or general via H_i / G*_i).
struct PathResult {
  bool evaluated = false;
  bool detected = false;
  std::string message;
  double cos_theta = 0.0;
  /// Mean of the tested scalar (ΣG_i² or ‖A‖²), i.e. sec²θ.
  double C = 0.0;
  Vec axis;
  double constancy_residual = 0.0;
  double axis_residual = 0.0;
  double masked_fraction = 1.0;
  double integration_constant = 0.0;  // slant only
  // General path only: the same axis rebuilt from G*_i.
  Vec axis_gstar;
  double axis_residual_gstar = 0.0;
  double angle_harmonic_gstar = 0.0;
};

/// Direct tests against a caller-supplied direction d; these also cover
/// cos θ = 0, where C = sec²θ does not exist.
struct HintResult {
  Vec direction;
  double tangent_mean = 0.0, tangent_std = 0.0;  // ⟨V_1, d⟩
  double normal_mean = 0.0, normal_std = 0.0;    // ⟨V_2, d⟩
  bool general = false;
  bool slant = false;
  /// Directions a with ⟨V_1, a⟩ (resp. ⟨V_2, a⟩) closest to constant: the
  /// least-variance eigenvector of the sample covariance, signed toward d.
  Vec fitted_tangent_axis, fitted_normal_axis;
  double fitted_tangent_angle = 0.0, fitted_normal_angle = 0.0;
};

struct HelixReport {
  Classification classification = Classification::Neither;
  ReportStatus status = ReportStatus::Ok;
  std::string message;
  double cos_theta = 0.0;
  double C = 0.0;
  Vec axis;
  double constancy_residual = 0.0;
  double axis_residual = 0.0;
  double masked_fraction = 0.0;
  int samples = 0;

  PathResult slant;
  PathResult general;
  std::optional<HintResult> hint;

  bool is_slant() const { return classification == Classification::Slant || classification == Classification::Both; }
  bool is_general() const {
    return classification == Classification::General || classification == Classification::Both;
  }
};

/// Classifies a unit-speed curve from a Frenet grid of opts.grid samples.
/// Degenerate frames and masking problems are reported in `status`, never
/// thrown.
HelixReport classify(const Curve& c, const ClassifyOptions& opts = {});
HelixReport classify_grid(const std::vector<FrenetApparatus>& grid, const ClassifyOptions& opts = {});

/// σ = κ²/(κ²+τ²)^{3/2} (τ/κ)' for curves in E^3.
struct SlantInvariant {
  std::vector<double> s;
  std::vector<double> sigma;  // NaN where masked
  std::vector<bool> valid;
  double mean = 0.0;
  double stddev = 0.0;
  double relative_stddev = 0.0;
  double masked_fraction = 0.0;
};
SlantInvariant slant_invariant_3d(const std::vector<FrenetApparatus>& grid);

/// Frame and curvatures of the tangent indicatrix of a curve in E^3 expressed
/// through the curve's own apparatus (needs curvature derivatives).
struct IndicatrixFrame3d {
  Vec T, N, B;
  double curvature = 0.0;
  double torsion = 0.0;
};
IndicatrixFrame3d indicatrix_frame_3d(const FrenetApparatus& a);

/// Axis of the indicatrix of a 3D slant helix computed from the curve's own
/// apparatus: mean direction of T + (κ_β/τ_β) B.
Vec indicatrix_axis_3d(const std::vector<FrenetApparatus>& grid);

/// Darboux direction τV_1 + κV_3, averaged; the axis of a general helix in E^3.
Vec darboux_axis_3d(const std::vector<FrenetApparatus>& grid);

struct IndicatrixOptions {
  /// Sampled curves only: 0 keeps the curve's own nodes (non-uniform in s_β);
  /// a positive count resamples β at that many uniform s_β values.
  std::size_t samples = 0;
};

/// β = α' reparametrised by its own arc length s_β (ds_β = k_1 ds).
/// Analytic curves give an analytic β; sampled curves give β at the curve's
/// nodes (or resampled, see IndicatrixOptions) projected onto the unit sphere.
/// Throws DegenerateError where k_1 vanishes.
Curve tangent_indicatrix(const Curve& c, const IndicatrixOptions& opts = {});

struct SameAxisReport {
  HelixReport curve;
  HelixReport indicatrix;
  Vec axis_of_curve;
  Vec axis_of_indicatrix;        // harmonic-curvature path
  Vec axis_of_indicatrix_gstar;  // G*_i path
  double angle_between = 0.0;
  double angle_between_gstar = 0.0;
};

/// Runs classify on the curve (slant path) and on its tangent indicatrix
/// (general path) and compares the axes. PreconditionError when the curve
/// is not a slant helix; UnreliableError when the indicatrix general path
/// cannot be evaluated.
SameAxisReport verify_same_axis(const Curve& c, const ClassifyOptions& opts = {},
                                const IndicatrixOptions& iopts = {});

/// Angle between unit directions.
double angle_between(const Vec& a, const Vec& b);
/// Angle between the lines spanned by a and b, in [0, π/2].
double line_angle(const Vec& a, const Vec& b);

}  // namespace helixkit
