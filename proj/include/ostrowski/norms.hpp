#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <sstream>
#include <vector>

#include "ostrowski/error.hpp"
#include "ostrowski/function_model.hpp"

namespace ostrowski {

struct NormConfig {
  /// Relative change below which grid refinement stops.
  double tol = 1e-6;
  std::size_t initial_samples = 129;
  std::size_t max_samples = (std::size_t{1} << 20) + 1;
  /// When set, an interval that straddles breakpoints is split there and the
  /// largest piece norm is returned. Otherwise such a request is rejected.
  bool split_at_breakpoints = false;
  /// Golden-section search on the grid cells around the best sample. It only
  /// adds samples, so the result stays a lower estimate of the supremum, but
  /// interior peaks are located to near machine precision instead of to the
  /// grid spacing.
  bool local_refine = true;
};

enum class NormMethod { Sampled, ExactProvided };

inline const char* to_string(NormMethod m) {
  return m == NormMethod::Sampled ? "Sampled" : "ExactProvided";
}

/// sup |f'| over [lo, hi].
///
/// Sampled values come from a finite grid and are therefore lower estimates
/// of the true supremum. Only ExactProvided values can back a certified bound.
struct SubintervalNorm {
  double lo = 0.0;
  double hi = 0.0;
  double value = 0.0;
  NormMethod method = NormMethod::Sampled;
  std::size_t samples_used = 0;
};

namespace detail {

// |f'(x)|, or a negative value when the derivative does not exist there.
// Samples that land on a declared breakpoint or fail at an interval end are
// moved inward by 1e-12 of the interval length.
inline double abs_derivative_sample(const FunctionModel& model, double x, double lo, double hi) {
  const double nudge = 1e-12 * (hi - lo);
  auto try_at = [&](double t) -> double {
    try {
      return std::fabs(model.derivative(t));
    } catch (const NonDifferentiableError&) {
    } catch (const DomainError&) {
    }
    return -1.0;
  };
  const bool at_end = (x == lo || x == hi);
  if (model.is_breakpoint(x) || at_end) {
    const double inward = (x == hi) ? x - nudge : x + nudge;
    if (model.is_breakpoint(x)) return try_at(inward);
    const double direct = try_at(x);
    return direct >= 0.0 ? direct : try_at(inward);
  }
  return try_at(x);
}

inline SubintervalNorm sample_norm(const FunctionModel& model, double lo, double hi,
                                   const NormConfig& cfg) {
  std::size_t n = std::max<std::size_t>(cfg.initial_samples, 2);
  std::size_t used = 0;
  double best = -1.0;
  double best_x = lo;
  const double width = hi - lo;

  auto point = [&](std::size_t j, std::size_t intervals) {
    if (j == intervals) return hi;
    return lo + width * static_cast<double>(j) / static_cast<double>(intervals);
  };
  auto visit = [&](double x) {
    const double v = abs_derivative_sample(model, x, lo, hi);
    if (v >= 0.0) {
      ++used;
      if (v > best) {
        best = v;
        best_x = x;
      }
    }
    return v;
  };

  for (std::size_t j = 0; j < n; ++j) visit(point(j, n - 1));

  // Nested doubling: the grid with 2(n-1) intervals contains the previous
  // one, so only odd indices are new and the running max never decreases.
  while (2 * n - 1 <= cfg.max_samples) {
    const double previous = best;
    const std::size_t intervals = 2 * (n - 1);
    for (std::size_t j = 1; j < intervals; j += 2) visit(point(j, intervals));
    n = intervals + 1;
    if (best >= 0.0 && best - previous <= cfg.tol * best) break;
  }

  if (best < 0.0) {
    std::ostringstream msg;
    msg << "derivative undefined at every sample of [" << lo << ", " << hi << "]";
    throw DomainError(msg.str());
  }

  if (cfg.local_refine) {
    const double h = width / static_cast<double>(n - 1);
    double l = std::max(lo, best_x - h);
    double r = std::min(hi, best_x + h);
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = r - kInvPhi * (r - l);
    double x2 = l + kInvPhi * (r - l);
    double v1 = visit(x1);
    double v2 = visit(x2);
    for (int it = 0; it < 64 && r - l > 1e-13 * width; ++it) {
      if (v1 < v2) {
        l = x1;
        x1 = x2;
        v1 = v2;
        x2 = l + kInvPhi * (r - l);
        v2 = visit(x2);
      } else {
        r = x2;
        x2 = x1;
        v2 = v1;
        x1 = r - kInvPhi * (r - l);
        v1 = visit(x1);
      }
    }
  }
  return {lo, hi, best, NormMethod::Sampled, used};
}

}  // namespace detail

inline SubintervalNorm sup_norm(const FunctionModel& model, double lo, double hi,
                                const NormConfig& cfg = {}) {
  if (!(lo < hi)) throw PreconditionError("degenerate norm interval: lo >= hi");
  if (lo < model.a() || hi > model.b()) {
    std::ostringstream msg;
    msg << "norm interval [" << lo << ", " << hi << "] leaves the domain [" << model.a()
        << ", " << model.b() << "]";
    throw PreconditionError(msg.str());
  }

  if (const auto& provider = model.exact_norms()) {
    if (const auto exact = provider(lo, hi)) return {lo, hi, *exact, NormMethod::ExactProvided, 0};
  }

  const auto inner = model.breakpoints_between(lo, hi);
  if (inner.empty()) return detail::sample_norm(model, lo, hi, cfg);

  if (!cfg.split_at_breakpoints) {
    std::ostringstream msg;
    msg << "breakpoint " << inner.front() << " lies inside [" << lo << ", " << hi << "]";
    throw PreconditionError(msg.str());
  }

  NormConfig piece_cfg = cfg;
  piece_cfg.split_at_breakpoints = false;
  SubintervalNorm out{lo, hi, 0.0, NormMethod::ExactProvided, 0};
  double left = lo;
  auto absorb = [&](double right) {
    const SubintervalNorm piece = sup_norm(model, left, right, piece_cfg);
    out.value = std::max(out.value, piece.value);
    out.samples_used += piece.samples_used;
    if (piece.method == NormMethod::Sampled) out.method = NormMethod::Sampled;
    left = right;
  };
  for (double p : inner) absorb(p);
  absorb(hi);
  return out;
}

/// One norm per consecutive pair of cut points. The cuts must start at a,
/// end at b, increase strictly and include every breakpoint of the model.
inline std::vector<SubintervalNorm> segment_norms(const FunctionModel& model,
                                                  std::span<const double> cuts,
                                                  const NormConfig& cfg = {}) {
  if (cuts.size() < 2) throw PreconditionError("need at least two cut points");
  if (cuts.front() != model.a() || cuts.back() != model.b())
    throw PreconditionError("cut points must start at a and end at b");
  for (std::size_t i = 1; i < cuts.size(); ++i)
    if (!(cuts[i - 1] < cuts[i])) throw PreconditionError("cut points must be strictly increasing");
  for (double p : model.breakpoints()) {
    if (!std::binary_search(cuts.begin(), cuts.end(), p)) {
      std::ostringstream msg;
      msg << "cut list is missing breakpoint " << p;
      throw PreconditionError(msg.str());
    }
  }

  NormConfig strict = cfg;
  strict.split_at_breakpoints = false;
  std::vector<SubintervalNorm> out;
  out.reserve(cuts.size() - 1);
  for (std::size_t i = 1; i < cuts.size(); ++i)
    out.push_back(sup_norm(model, cuts[i - 1], cuts[i], strict));
  return out;
}

}  // namespace ostrowski
