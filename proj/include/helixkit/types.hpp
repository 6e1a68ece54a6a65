#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace helixkit {

/// A point or vector of E^n.
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Closed parameter interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 1.0;
  double length() const { return hi - lo; }
  bool contains(double t, double slack = 0.0) const { return t >= lo - slack && t <= hi + slack; }
};

/// Frame or curvature computation hit a point where the curve degenerates
/// (vanishing curvature, non-regular point, rank-deficient Jacobian).
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Too many samples had to be masked out for a result to be trusted.
class UnreliableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation's stated precondition does not hold for its input.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace helixkit
