#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ostrowski/error.hpp"
#include "ostrowski/expr.hpp"

namespace ostrowski {

/// Caller-supplied sup|f'| over [lo, hi]. Returning nullopt means "not known".
using ExactNormProvider = std::function<std::optional<double>(double lo, double hi)>;

struct ExactNorm {
  double lo;
  double hi;
  double value;
};

/// Provider backed by a table. A query [lo, hi] is answered by the smallest
/// value among entries whose interval contains it; the sup over a superset
/// still bounds the sup over the subset, and taking the minimum keeps the
/// answer monotone under interval inclusion.
inline ExactNormProvider exact_norm_table(std::vector<ExactNorm> entries) {
  for (const auto& e : entries) {
    if (!(e.lo < e.hi)) throw PreconditionError("exact norm entry with lo >= hi");
    if (!(e.value >= 0.0) || !std::isfinite(e.value))
      throw PreconditionError("exact norm entry must be finite and non-negative");
  }
  return [entries = std::move(entries)](double lo, double hi) -> std::optional<double> {
    std::optional<double> best;
    for (const auto& e : entries)
      if (e.lo <= lo && hi <= e.hi && (!best || e.value < *best)) best = e.value;
    return best;
  };
}

/// A function on [a, b], continuous, differentiable except at the declared
/// breakpoints a < p1 < ... < pn < b.
class FunctionModel {
 public:
  FunctionModel(Expr ast, double a, double b, std::vector<double> breakpoints = {},
                ExactNormProvider exact_norms = {})
      : ast_(std::move(ast)),
        a_(a),
        b_(b),
        breakpoints_(std::move(breakpoints)),
        exact_norms_(std::move(exact_norms)) {
    if (!std::isfinite(a_) || !std::isfinite(b_) || !(a_ < b_))
      throw PreconditionError("interval requires finite a < b");
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
      const double p = breakpoints_[i];
      if (!(a_ < p && p < b_)) {
        std::ostringstream msg;
        msg << "breakpoint " << p << " is not inside ]" << a_ << ", " << b_ << "[";
        throw PreconditionError(msg.str());
      }
      if (i > 0 && !(breakpoints_[i - 1] < p))
        throw PreconditionError("breakpoints must be strictly increasing");
    }
    // Cheap sanity check of the "finite on [a, b]" invariant at the points
    // every bound formula evaluates.
    (void)value(a_);
    (void)value(b_);
    for (double p : breakpoints_) (void)value(p);
  }

  static FunctionModel from_text(std::string_view text, double a, double b,
                                 std::vector<double> breakpoints = {},
                                 ExactNormProvider exact_norms = {}) {
    return FunctionModel(parse(text), a, b, std::move(breakpoints), std::move(exact_norms));
  }

  const Expr& ast() const { return ast_; }
  double a() const { return a_; }
  double b() const { return b_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const ExactNormProvider& exact_norms() const { return exact_norms_; }

  bool is_breakpoint(double x) const {
    return std::binary_search(breakpoints_.begin(), breakpoints_.end(), x);
  }

  /// Breakpoints strictly inside ]lo, hi[.
  std::vector<double> breakpoints_between(double lo, double hi) const {
    std::vector<double> out;
    for (double p : breakpoints_)
      if (lo < p && p < hi) out.push_back(p);
    return out;
  }

  double value(double x) const { return eval(ast_, x); }

  DualValue dual(double x) const {
    if (is_breakpoint(x))
      throw NonDifferentiableError(x, "derivative requested at declared breakpoint " +
                                          std::to_string(x));
    return eval_dual(ast_, x);
  }

  double derivative(double x) const { return dual(x).derivative; }

 private:
  Expr ast_;
  double a_;
  double b_;
  std::vector<double> breakpoints_;
  ExactNormProvider exact_norms_;
};

}  // namespace ostrowski
