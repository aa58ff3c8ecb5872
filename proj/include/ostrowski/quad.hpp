#pragma once

#include <cmath>
#include <limits>
#include <sstream>

#include "ostrowski/error.hpp"
#include "ostrowski/function_model.hpp"

namespace ostrowski {

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int subdivisions = 0;
  /// False when some panel hit the recursion limit; value is then the best
  /// available estimate.
  bool converged = true;
};

inline constexpr int kMaxQuadDepth = 60;

namespace detail {

class AdaptiveSimpson {
 public:
  explicit AdaptiveSimpson(const FunctionModel& model) : model_(model) {}

  void panel(double lo, double hi, double tol) {
    const double flo = model_.value(lo);
    const double fhi = model_.value(hi);
    const double mid = 0.5 * (lo + hi);
    const double fmid = model_.value(mid);
    recurse(lo, mid, hi, flo, fmid, fhi, simpson(lo, hi, flo, fmid, fhi), tol, 0);
  }

  const IntegralResult& result() const { return result_; }

 private:
  static double simpson(double lo, double hi, double flo, double fmid, double fhi) {
    return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
  }

  void recurse(double lo, double mid, double hi, double flo, double fmid, double fhi,
               double whole, double tol, int depth) {
    const double lmid = 0.5 * (lo + mid);
    const double rmid = 0.5 * (mid + hi);
    const double flmid = model_.value(lmid);
    const double frmid = model_.value(rmid);
    const double left = simpson(lo, mid, flo, flmid, fmid);
    const double right = simpson(mid, hi, fmid, frmid, fhi);
    const double delta = left + right - whole;

    // Differences below a few ulps of the panel's absolute mass are noise.
    const double noise = 8.0 * std::numeric_limits<double>::epsilon() * (hi - lo) / 6.0 *
                         (std::fabs(flo) + 4.0 * std::fabs(flmid) + 2.0 * std::fabs(fmid) +
                          4.0 * std::fabs(frmid) + std::fabs(fhi));
    const bool exhausted = depth >= kMaxQuadDepth || lmid <= lo || rmid >= hi;
    if (std::fabs(delta) <= 15.0 * tol || std::fabs(delta) <= noise || exhausted) {
      // Richardson: the composite rule error is about delta / 15.
      result_.value += left + right + delta / 15.0;
      result_.error_estimate += std::fabs(delta) / 15.0;
      result_.subdivisions += 1;
      if (exhausted && std::fabs(delta) > 15.0 * tol && std::fabs(delta) > noise)
        result_.converged = false;
      return;
    }
    recurse(lo, lmid, mid, flo, flmid, fmid, left, 0.5 * tol, depth + 1);
    recurse(mid, rmid, hi, fmid, frmid, fhi, right, 0.5 * tol, depth + 1);
  }

  const FunctionModel& model_;
  IntegralResult result_;
};

}  // namespace detail

/// Adaptive Simpson quadrature of the model over [lo, hi], pre-split at every
/// breakpoint inside the range. Each panel receives a share of tol
/// proportional to its width.
inline IntegralResult integrate(const FunctionModel& model, double lo, double hi, double tol) {
  if (!(tol > 0.0)) throw PreconditionError("integration tolerance must be positive");
  if (!(lo < hi)) throw PreconditionError("integration range requires lo < hi");
  if (lo < model.a() || hi > model.b()) {
    std::ostringstream msg;
    msg << "integration range [" << lo << ", " << hi << "] leaves the domain [" << model.a()
        << ", " << model.b() << "]";
    throw PreconditionError(msg.str());
  }

  detail::AdaptiveSimpson rule(model);
  const double width = hi - lo;
  double left = lo;
  for (double p : model.breakpoints_between(lo, hi)) {
    rule.panel(left, p, tol * (p - left) / width);
    left = p;
  }
  rule.panel(left, hi, tol * (hi - left) / width);
  return rule.result();
}

/// (1 / (b - a)) * integral of f over [a, b], accurate to 1e-12 absolute.
inline double integral_mean(const FunctionModel& model) {
  const double width = model.b() - model.a();
  const IntegralResult r = integrate(model, model.a(), model.b(), 1e-12 * width);
  if (!r.converged)
    throw ConvergenceError(r.value / width, "integral mean did not converge");
  return r.value / width;
}

inline void require_interior(const FunctionModel& model, double p) {
  if (!(model.a() < p && p < model.b())) {
    std::ostringstream msg;
    msg << "p = " << p << " must satisfy a < p < b with [a, b] = [" << model.a() << ", "
        << model.b() << "]";
    throw PreconditionError(msg.str());
  }
}

/// |f(p) - integral mean|.
inline double deviation(const FunctionModel& model, double p) {
  require_interior(model, p);
  return std::fabs(model.value(p) - integral_mean(model));
}

}  // namespace ostrowski
