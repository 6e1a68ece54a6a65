#pragma once

#include <optional>
#include <vector>

#include "helixkit/curve.hpp"
#include "helixkit/types.hpp"

namespace helixkit {

/// Curvature below which the frame is considered degenerate.
inline constexpr double kCurvatureEps = 1e-9;

/// Frenet frame V_1..V_n and curvatures k_1..k_{n-1} at one arc-length value.
///
/// k_1..k_{n-2} are positive; k_{n-1} is signed so that det[V_1..V_n] = +1.
/// When the curve has a jet one order above n, the arc-length derivatives of
/// the frame and curvatures are carried as well.
struct FrenetApparatus {
  double s = 0.0;
  std::vector<Vec> frame;
  std::vector<double> curvatures;
  /// First i (1-based) with |k_i| < curvature_eps. For i <= n-2 the frame
  /// vectors V_{i+2}.. are an arbitrary orthonormal completion.
  std::optional<int> degenerate_rank;
  std::vector<Vec> frame_derivatives;
  std::vector<double> curvature_derivatives;
  /// Curvatures re-estimated by differencing neighbouring frames; filled by
  /// frenet_grid() only.
  std::vector<double> frame_difference_curvatures;
  /// ‖α'‖ of the underlying jet (1 for a unit-speed curve).
  double speed = 1.0;

  int dim() const { return static_cast<int>(frame.size()); }
  const Vec& V(int i) const { return frame.at(i - 1); }
  double k(int i) const { return curvatures.at(i - 1); }
  double dk(int i) const { return curvature_derivatives.at(i - 1); }
  bool has_derivatives() const { return !curvature_derivatives.empty(); }
};

struct FrenetOptions {
  double curvature_eps = kCurvatureEps;
  /// Compute frame/curvature derivatives when the jet allows it.
  bool derivatives = true;
};

/// Frenet apparatus from derivatives d^1..d^n (and optionally d^{n+1}) of a
/// regular curve at one point. The jet need not be unit speed: curvatures use
/// the parametrisation-free identity ⟨d^{i+1}, V_{i+1}⟩ = |d^1|^{i+1} k_1...k_i.
FrenetApparatus frenet_from_jet(const DerivativeJet& jet, const FrenetOptions& opts = {});

/// Frenet apparatus of a unit-speed curve at s. Throws PreconditionError for a
/// curve whose unit_speed flag is not set.
FrenetApparatus frenet_at(const Curve& c, double s, const FrenetOptions& opts = {});

/// m >= 16 apparatuses at uniformly spaced s over the domain, after trimming
/// margin_fraction of its length from both ends. Also fills the
/// frame-difference validation curvatures.
std::vector<FrenetApparatus> frenet_grid(const Curve& c, int m, double margin_fraction = 0.0,
                                         const FrenetOptions& opts = {});

/// Max over i, j of |⟨V_i, V_j⟩ - δ_ij|.
double orthonormality_defect(const FrenetApparatus& a);
double frame_determinant(const FrenetApparatus& a);

/// Per grid point and frame vector, |ΔV_i/Δs - (-k_{i-1}V_{i-1} + k_iV_{i+1})|
/// with centred differences over interior points; returns the maximum.
double frenet_ode_residual(const std::vector<FrenetApparatus>& grid);

}  // namespace helixkit
