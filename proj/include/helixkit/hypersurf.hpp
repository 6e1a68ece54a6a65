#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "helixkit/expr.hpp"
#include "helixkit/helix.hpp"
#include "helixkit/types.hpp"

namespace helixkit {

/// Raised when a geodesic cannot be continued (projection failed to converge
/// or the curve left the parameter box).
class IntegrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parametric hypersurface X: box ⊂ R^{n-1} → E^n with a candidate fixed
/// direction d. Construction checks that X is an immersion on a grid.
class Hypersurface {
 public:
  Hypersurface(std::vector<Expression> components, std::vector<std::string> parameters, std::vector<Interval> box,
               Vec direction);

  int dim() const { return static_cast<int>(components_.size()); }
  int parameter_count() const { return dim() - 1; }
  const std::vector<std::string>& parameters() const { return parameters_; }
  const std::vector<Interval>& box() const { return box_; }
  const Vec& direction() const { return direction_; }
  const std::vector<Expression>& components() const { return components_; }

  bool in_box(const Vec& u, double slack = 0.0) const;
  Vec point(const Vec& u) const;
  /// n × (n-1) matrix of coordinate tangents ∂X/∂u_i.
  Mat jacobian(const Vec& u) const;
  /// ∂²X/∂u_i∂u_j.
  Vec second_derivative(const Vec& u, int i, int j) const;

  /// Unit normal from the generalised cross product of the coordinate
  /// tangents in index order, so det[X_1 .. X_{n-1}, ξ] > 0.
  /// Throws DegenerateError where the tangents are rank deficient.
  Vec normal(const Vec& u) const;

  /// Parameters of the surface point closest to x, by Gauss-Newton from `guess`.
  /// Throws IntegrationError when it does not converge.
  Vec project(const Vec& x, const Vec& guess) const;

 private:
  std::vector<Expression> components_;
  std::vector<std::string> parameters_;
  std::vector<Interval> box_;
  Vec direction_;
  std::vector<std::vector<Expression>> first_;                // [i][coord]
  std::vector<std::vector<std::vector<Expression>>> second_;  // [i][j][coord]
};

Vec normal(const Hypersurface& h, const Vec& u);

struct HelixSurfaceResult {
  bool constant = false;
  double value = 0.0;            // mean of ⟨d, ξ⟩
  double stddev = 0.0;           // absolute; the constancy test
  double relative_stddev = 0.0;  // inf when the mean is 0
  int samples = 0;
};

/// ⟨d, ξ⟩ on a per_axis^(n-1) grid over the parameter box; constant iff its
/// standard deviation is at most tol.
HelixSurfaceResult is_helix_surface(const Hypersurface& h, int per_axis = 64, double tol = 1e-6);

struct GeodesicSample {
  double s = 0.0;
  Vec position;
  Vec params;
  Vec velocity;
  double lambda = 0.0;  // α'' = λξ
  /// Distance of the integrated point from the surface before projection.
  double surface_residual = 0.0;
  /// |‖α'‖ - 1| before renormalisation.
  double speed_defect = 0.0;
  /// Tangential part of α'' from centred differences of the velocity.
  double tangential_acceleration = 0.0;
};

/// Unit-speed geodesic by RK4 on α'' = λξ, λ = II(α', α'), with positions
/// projected back onto the surface and velocities onto the tangent space
/// after every step. Returns steps + 1 samples.
std::vector<GeodesicSample> geodesic(const Hypersurface& h, const Vec& start, const Vec& tangent, double length,
                                     int steps);

/// Geodesic as a sampled curve, keeping every stride-th sample.
Curve geodesic_curve(const std::vector<GeodesicSample>& samples, int stride = 1);

struct GeodesicSpec {
  Vec start;    // parameters
  Vec tangent;  // ambient unit vector in T_pM
  double length = 1.0;
  int steps = 1000;
};

/// `count` geodesics with starts drawn uniformly from the middle half of the
/// box and tangent angles kept away from the coordinate directions.
std::vector<GeodesicSpec> random_geodesics(const Hypersurface& h, int count, unsigned seed, double length);

struct GeodesicVerifyOptions {
  double tol_normal = 1e-5;    // std of ⟨V_2, d⟩
  double tol_axis = 1e-3;      // indicatrix axis vs d
  double tol_pairwise = 2e-3;  // indicatrix axes against each other
  double sample_spacing = 0.02;
  ClassifyOptions classify;

  GeodesicVerifyOptions() { classify.margin = 0.02; }
};

struct GeodesicCheck {
  bool excluded = false;  // k_1 vanishes (straight geodesic)
  std::string message;
  int samples = 0;
  double max_speed_defect = 0.0;
  double max_surface_residual = 0.0;
  double max_tangential_acceleration = 0.0;

  // ⟨V_2, d⟩ along the geodesic.
  double normal_mean = 0.0, normal_std = 0.0, normal_max_abs = 0.0;
  bool slant = false;
  /// Max angle between the lines of ξ and V_2.
  double normal_frame_angle = 0.0;
  HelixReport curve;

  HelixReport indicatrix;
  Vec indicatrix_axis;
  double indicatrix_axis_angle = 0.0;  // line angle to d
  bool spherical_general = false;
};

struct GeodesicTheoremReport {
  HelixSurfaceResult surface;
  std::vector<GeodesicCheck> geodesics;
  double max_pairwise_axis_angle = 0.0;
  bool axes_coincide = false;
  bool passed = false;
  std::string message;
};

/// For each geodesic: ⟨V_2, d⟩ constant, its tangent indicatrix a general
/// helix with axis d, and all indicatrix axes in agreement. When the surface
/// is not a helix surface the geodesics are not examined.
GeodesicTheoremReport verify_geodesic_theorems(const Hypersurface& h,
                                               const std::vector<std::vector<GeodesicSample>>& geodesics,
                                               const GeodesicVerifyOptions& opts = {});

}  // namespace helixkit
