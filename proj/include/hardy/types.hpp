#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace hardy {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

/// Reduces an angle to [0, 2π).
inline double normalize_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

inline Complex unit(double theta) { return std::polar(1.0, theta); }

}  // namespace hardy
