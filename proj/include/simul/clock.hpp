#pragma once

#include <limits>
#include <variant>

#include "simul/types.hpp"

namespace simul {

/// A point of the circle group, stored as a unit-modulus complex number.
struct TimeFunctionValue {
  Complex value{1.0, 0.0};

  static TimeFunctionValue from_angle(double radians) {
    return {std::polar(1.0, radians)};
  }

  /// Angle in [0, 2π).
  double angle() const { return wrap_angle(std::arg(value)); }

  friend bool operator==(const TimeFunctionValue&,
                         const TimeFunctionValue&) = default;
};

/// Value of a time function: real-valued clocks for non-periodic flows,
/// circle-valued ones for periodic flows.
using ClockValue = std::variant<double, TimeFunctionValue>;

/// |a − b| on the real line, |z1 − z2| on the circle. Mixed kinds compare
/// as infinitely far apart.
inline double clock_distance(const ClockValue& a, const ClockValue& b) {
  if (a.index() != b.index()) return std::numeric_limits<double>::infinity();
  if (const auto* x = std::get_if<double>(&a)) {
    return std::abs(*x - std::get<double>(b));
  }
  return std::abs(std::get<TimeFunctionValue>(a).value -
                  std::get<TimeFunctionValue>(b).value);
}

/// Scalar key for ordering clock values (the angle for circle values).
inline double clock_key(const ClockValue& v) {
  if (const auto* x = std::get_if<double>(&v)) return *x;
  return std::get<TimeFunctionValue>(v).angle();
}

}  // namespace simul
