#pragma once

#include <cmath>

namespace ostrowski {

/// First-order dual number: value + derivative * eps, eps^2 = 0.
struct DualValue {
  double value = 0.0;
  double derivative = 0.0;

  constexpr DualValue() = default;
  constexpr DualValue(double v, double d = 0.0) : value(v), derivative(d) {}

  static constexpr DualValue constant(double v) { return {v, 0.0}; }
  static constexpr DualValue variable(double v) { return {v, 1.0}; }

  friend constexpr bool operator==(const DualValue&, const DualValue&) = default;
};

constexpr DualValue operator-(const DualValue& u) { return {-u.value, -u.derivative}; }

constexpr DualValue operator+(const DualValue& u, const DualValue& v) {
  return {u.value + v.value, u.derivative + v.derivative};
}

constexpr DualValue operator-(const DualValue& u, const DualValue& v) {
  return {u.value - v.value, u.derivative - v.derivative};
}

constexpr DualValue operator*(const DualValue& u, const DualValue& v) {
  return {u.value * v.value, u.derivative * v.value + u.value * v.derivative};
}

constexpr DualValue operator/(const DualValue& u, const DualValue& v) {
  return {u.value / v.value,
          (u.derivative * v.value - u.value * v.derivative) / (v.value * v.value)};
}

// Elementary functions. Domain checks live in the evaluator, these are the
// bare chain rules.

inline DualValue sin(const DualValue& u) {
  return {std::sin(u.value), std::cos(u.value) * u.derivative};
}

inline DualValue cos(const DualValue& u) {
  return {std::cos(u.value), -std::sin(u.value) * u.derivative};
}

inline DualValue exp(const DualValue& u) {
  const double e = std::exp(u.value);
  return {e, e * u.derivative};
}

inline DualValue log(const DualValue& u) {
  return {std::log(u.value), u.derivative / u.value};
}

inline DualValue sqrt(const DualValue& u) {
  const double s = std::sqrt(u.value);
  return {s, u.derivative / (2.0 * s)};
}

/// Undefined derivative at u == 0; the caller is expected to reject that case.
inline DualValue abs(const DualValue& u) {
  const double sign = u.value < 0.0 ? -1.0 : 1.0;
  return {std::fabs(u.value), sign * u.derivative};
}

/// u^v. When v carries no derivative the power rule is used, so negative
/// bases with integral exponents work; otherwise u must be positive.
inline DualValue pow(const DualValue& u, const DualValue& v) {
  const double value = std::pow(u.value, v.value);
  if (v.derivative == 0.0) {
    if (u.derivative == 0.0 || v.value == 0.0) return {value, 0.0};
    return {value, v.value * std::pow(u.value, v.value - 1.0) * u.derivative};
  }
  return {value, value * (v.derivative * std::log(u.value) +
                          v.value * u.derivative / u.value)};
}

}  // namespace ostrowski
