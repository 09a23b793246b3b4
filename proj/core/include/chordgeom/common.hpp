#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace chordgeom {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class ErrorCode {
  EmptyInterior,
  Unbounded,
  DegenerateHull,
  DivergentIndex,
  PoorFit,
  QuadratureNonconvergence,
  OriginOutside,
  OriginNotInterior,
  NotEven,
  NotSymmetric,
  NonConvergence,
  DegenerateDrift,
  CollapseDetected,
  NonpositiveSupport,
  PointOutside,
  Precondition,
  Schema,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Volume of the unit ball in R^n; n may be zero.
inline double omega(int n) {
  return std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

inline double beta_fn(double a, double b) {
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

}  // namespace chordgeom
