#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <numbers>

namespace simul {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Default numerical tolerances shared across modules.
namespace tolerance {
inline constexpr double hermitian = 1e-10;
/// Relative to the largest eigenvalue magnitude.
inline constexpr double spectral_gap = 1e-9;
inline constexpr double ray = 1e-9;
/// Smallest admissible eigen-component modulus of a normalized state.
inline constexpr double reduced_space = 1e-9;
inline constexpr double fixed_point = 1e-9;
}  // namespace tolerance

/// Reduces an angle to [0, 2π).
inline double wrap_angle(double angle) {
  double r = std::fmod(angle, kTwoPi);
  if (r < 0) r += kTwoPi;
  // fmod of a tiny negative number can round up to exactly 2π
  if (r >= kTwoPi) r = 0.0;
  return r;
}

}  // namespace simul
