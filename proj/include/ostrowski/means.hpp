#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ostrowski/error.hpp"

namespace ostrowski {

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// Arithmetic, geometric, harmonic and logarithmic means of 0 < a < b, and
/// the refined gaps between them.
struct MeansReport {
  double a = 0.0;
  double b = 0.0;
  double A = 0.0;
  double G = 0.0;
  double H = 0.0;
  double L = 0.0;
  InequalityCheck ineq_i;    // 0 <= A - L
  InequalityCheck ineq_ii;   // 0 <= L - G
  InequalityCheck ineq_iii;  // 0 <= L - H
};

inline constexpr double kMeansSlack = 1e-12;

namespace detail {

inline void require_ordered_positive(double a, double b) {
  if (!(a > 0.0) || !(a < b) || !std::isfinite(b)) {
    std::ostringstream msg;
    msg << "means need 0 < a < b, got a = " << a << ", b = " << b;
    throw PreconditionError(msg.str());
  }
}

}  // namespace detail

inline MeansReport compute_means(double a, double b) {
  detail::require_ordered_positive(a, b);
  MeansReport r;
  r.a = a;
  r.b = b;
  r.A = 0.5 * (a + b);
  r.G = std::sqrt(a) * std::sqrt(b);
  r.H = 2.0 * a * b / (a + b);
  // ln b - ln a, computed without cancellation when b is close to a.
  r.L = (b - a) / std::log1p((b - a) / a);
  return r;
}

/// Fills ineq_i..ineq_iii with the refined right-hand sides obtained from the
/// f(t) = 1/t case of the refined Ostrowski bound:
///
///   A - L <= A L (b-a) / (4 a^2)
///   L - G <= min{ G L (b-a)/a^2 [1/4 + ((G-A)/(b-a))^2], (G-a) / (2 a^2) }
///   L - H <= min{ H L (b-a)/a^2 [1/4 + ((H-A)/(b-a))^2], (b-H) / (2 H^2) }
///
/// The second entries of the two minima are not rescaled by G L and H L, so
/// they are not homogeneous in (a, b); mean_gap_bound() gives the rescaled
/// form.
inline MeansReport refined_mean_bounds(double a, double b) {
  MeansReport r = compute_means(a, b);
  const double w = b - a;
  auto check = [](double lhs, double rhs) {
    return InequalityCheck{lhs, rhs, 0.0 <= lhs && lhs <= rhs + kMeansSlack};
  };
  auto quad = [&](double m) {
    const double t = (m - r.A) / w;
    return 0.25 + t * t;
  };

  r.ineq_i = check(r.A - r.L, r.A * r.L * w / (4.0 * a * a));
  r.ineq_ii = check(r.L - r.G, std::min(r.G * r.L * w / (a * a) * quad(r.G),
                                        (r.G - a) / (2.0 * a * a)));
  r.ineq_iii = check(r.L - r.H, std::min(r.H * r.L * w / (a * a) * quad(r.H),
                                         (b - r.H) / (2.0 * r.H * r.H)));
  return r;
}

/// |(L - p) / (L p)| against min{classical, halfmax} for f(t) = 1/t on
/// [a, b], where ||f'|| is 1/lo^2 on [lo, hi].
inline InequalityCheck reciprocal_deviation_bound(double a, double b, double p) {
  detail::require_ordered_positive(a, b);
  if (!(a < p && p < b)) {
    std::ostringstream msg;
    msg << "p = " << p << " must satisfy a < p < b";
    throw PreconditionError(msg.str());
  }
  const double L = compute_means(a, b).L;
  const double lhs = std::fabs((L - p) / (L * p));
  const double classical = ((p - a) * (p - a) + (b - p) * (b - p)) / (2.0 * (b - a)) / (a * a);
  const double halfmax = 0.5 * std::max((p - a) / (a * a), (b - p) / (p * p));
  const double rhs = std::min(classical, halfmax);
  return {lhs, rhs, lhs <= rhs + kMeansSlack};
}

/// |L - p| against p L times the reciprocal bound: the gap between the
/// logarithmic mean and any interior point, homogeneous of degree one.
inline InequalityCheck mean_gap_bound(double a, double b, double p) {
  const InequalityCheck rec = reciprocal_deviation_bound(a, b, p);
  const double L = compute_means(a, b).L;
  const double lhs = std::fabs(L - p);
  const double rhs = p * L * rec.rhs;
  return {lhs, rhs, lhs <= rhs * (1.0 + kMeansSlack) + kMeansSlack};
}

}  // namespace ostrowski
