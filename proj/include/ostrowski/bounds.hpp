#pragma once

// Ostrowski-type bounds on |f(p) - (1/(b-a)) * integral_a^b f|.
//
//   classical   [1/4 + ((p - (a+b)/2) / (b-a))^2] (b-a) ||f'||_[a,b]
//   halfmax     1/2 max{(p-a) ||f'||_[a,p], (b-p) ||f'||_[p,b]}
//   refined     min{classical, halfmax}
//   piecewise   1/2 max_k (c_k - c_{k-1}) ||f'||_[c_{k-1},c_k] + additive
//
// For the piecewise variants the cut points c_k are a, the breakpoints (and p
// when p is not one of them) and b; with S = f(a) + sum f(p_i) + f(b) the
// additive term is max{f(a) - S, S - f(b)} when p is a regular point, and
// max{f(a) + f(p) - S, S - f(p) - f(b)} when p is itself a breakpoint.
//
// The additive term can be negative and the resulting total is reported as
// is, never clamped. Every report carries an independent measurement of the
// deviation from the quadrature oracle and a verdict.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ostrowski/error.hpp"
#include "ostrowski/function_model.hpp"
#include "ostrowski/norms.hpp"
#include "ostrowski/quad.hpp"

namespace ostrowski {

enum class BoundMode { Classical, Refined, Piecewise, AtBreakpoint };
enum class BoundStatus { Holds, ViolatedObserved, Inconclusive };

/// Absolute slack on deviation <= bound.
inline constexpr double kVerificationSlack = 1e-9;

inline const char* to_string(BoundMode m) {
  switch (m) {
    case BoundMode::Classical: return "classical";
    case BoundMode::Refined: return "refined";
    case BoundMode::Piecewise: return "piecewise";
    case BoundMode::AtBreakpoint: return "at-breakpoint";
  }
  return "?";
}

inline std::optional<BoundMode> parse_mode(std::string_view s) {
  if (s == "classical") return BoundMode::Classical;
  if (s == "refined") return BoundMode::Refined;
  if (s == "piecewise") return BoundMode::Piecewise;
  if (s == "at-breakpoint") return BoundMode::AtBreakpoint;
  return std::nullopt;
}

inline const char* to_string(BoundStatus s) {
  switch (s) {
    case BoundStatus::Holds: return "Holds";
    case BoundStatus::ViolatedObserved: return "ViolatedObserved";
    case BoundStatus::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct BoundRequest {
  FunctionModel model;
  double p;
  BoundMode mode;
};

struct BoundReport {
  double p = 0.0;
  BoundMode mode = BoundMode::Classical;

  double deviation = 0.0;
  double classical = 0.0;
  double halfmax = 0.0;
  double refined = 0.0;
  std::optional<double> piecewise_maxterm;
  std::optional<double> additive_term;
  std::optional<double> value_sum;  // S
  double total_bound = 0.0;

  BoundStatus status = BoundStatus::Inconclusive;
  /// Every norm feeding total_bound was supplied exactly.
  bool certified = false;

  /// deviation / total_bound, or 0 with the flag set when total_bound <= 0.
  double tightness_ratio = 0.0;
  bool tightness_flagged = false;

  /// Segment attaining the max term (lowest index on ties).
  std::optional<std::size_t> argmax_segment;
};

// ---------------------------------------------------------------------------
// Closed-form pieces

/// [1/4 + ((p - (a+b)/2) / (b-a))^2] (b-a)
inline double classical_factor(double p, double a, double b) {
  const double t = (p - 0.5 * (a + b)) / (b - a);
  return (0.25 + t * t) * (b - a);
}

/// ((p-a)^2 + (b-p)^2) / (2(b-a)); algebraically equal to classical_factor.
inline double classical_factor_quotient(double p, double a, double b) {
  return ((p - a) * (p - a) + (b - p) * (b - p)) / (2.0 * (b - a));
}

namespace detail {

inline void require_open(double p, double a, double b) {
  if (!(a < p && p < b)) {
    std::ostringstream msg;
    msg << "p = " << p << " must satisfy a < p < b with [a, b] = [" << a << ", " << b << "]";
    throw PreconditionError(msg.str());
  }
}

inline void require_covers(const SubintervalNorm& n, double lo, double hi, const char* what) {
  if (n.lo > lo || n.hi < hi) {
    std::ostringstream msg;
    msg << what << " norm over [" << n.lo << ", " << n.hi << "] does not cover [" << lo << ", "
        << hi << "]";
    throw PreconditionError(msg.str());
  }
}

}  // namespace detail

inline double classical_bound(double p, double a, double b, const SubintervalNorm& norm_ab) {
  detail::require_open(p, a, b);
  detail::require_covers(norm_ab, a, b, "classical");
  return classical_factor(p, a, b) * norm_ab.value;
}

inline double halfmax_bound(double p, double a, double b, const SubintervalNorm& norm_ap,
                            const SubintervalNorm& norm_pb) {
  detail::require_open(p, a, b);
  detail::require_covers(norm_ap, a, p, "left");
  detail::require_covers(norm_pb, p, b, "right");
  return 0.5 * std::max((p - a) * norm_ap.value, (b - p) * norm_pb.value);
}

struct SegmentMax {
  double value = 0.0;
  std::size_t argmax = 0;
};

/// 1/2 max_k (cuts[k+1] - cuts[k]) * norms[k].
inline SegmentMax segment_halfmax(std::span<const double> cuts,
                                  std::span<const SubintervalNorm> norms) {
  if (cuts.size() != norms.size() + 1 || norms.empty())
    throw PreconditionError("need exactly one norm per segment");
  SegmentMax out{-1.0, 0};
  for (std::size_t k = 0; k < norms.size(); ++k) {
    const double term = (cuts[k + 1] - cuts[k]) * norms[k].value;
    if (term > out.value) out = {term, k};
  }
  out.value *= 0.5;
  return out;
}

// ---------------------------------------------------------------------------
// Reports

/// Mode-specific preconditions on (model, p). Throws PreconditionError.
inline void validate_request(const FunctionModel& model, double p, BoundMode mode) {
  require_interior(model, p);
  const auto& bps = model.breakpoints();
  std::ostringstream msg;
  switch (mode) {
    case BoundMode::Classical:
      return;
    case BoundMode::Refined:
      if (bps.empty() || (bps.size() == 1 && bps.front() == p)) return;
      throw PreconditionError(
          "refined mode needs a model without breakpoints, or with p as its only breakpoint");
    case BoundMode::Piecewise:
      if (bps.empty()) throw PreconditionError("piecewise mode needs at least one breakpoint");
      if (!model.is_breakpoint(p)) return;
      msg << "p = " << p << " is a breakpoint; use at-breakpoint mode";
      throw PreconditionError(msg.str());
    case BoundMode::AtBreakpoint:
      if (model.is_breakpoint(p)) return;
      msg << "p = " << p << " is not a declared breakpoint";
      throw PreconditionError(msg.str());
  }
}

/// Evaluates bounds for one model. Holds the oracle integral and the global
/// norm so that sweeps pay for them once; const member functions are safe to
/// call concurrently.
class BoundEvaluator {
 public:
  explicit BoundEvaluator(FunctionModel model, NormConfig cfg = {})
      : model_(std::move(model)), cfg_(split(cfg)) {
    const double width = model_.b() - model_.a();
    integral_ = integrate(model_, model_.a(), model_.b(), 1e-12 * width);
    mean_ = integral_.value / width;
    norm_ab_ = sup_norm(model_, model_.a(), model_.b(), cfg_);
  }

  const FunctionModel& model() const { return model_; }
  double integral_mean() const { return mean_; }
  const IntegralResult& integral() const { return integral_; }

  BoundReport evaluate(double p, BoundMode mode) const {
    switch (mode) {
      case BoundMode::Classical: return classical(p);
      case BoundMode::Refined: return refined(p);
      case BoundMode::Piecewise: return piecewise(p);
      case BoundMode::AtBreakpoint: return at_breakpoint(p);
    }
    throw PreconditionError("unknown bound mode");
  }

  BoundReport classical(double p) const {
    Common c = common(p, BoundMode::Classical);
    c.report.total_bound = c.report.classical;
    c.report.certified = exact(norm_ab_);
    return finish(c.report);
  }

  BoundReport refined(double p) const {
    validate_request(model_, p, BoundMode::Refined);
    Common c = common(p, BoundMode::Refined);
    c.report.total_bound = c.report.refined;
    c.report.argmax_segment = c.halfmax_argmax;
    c.report.certified = exact(norm_ab_) && exact(c.norm_ap) && exact(c.norm_pb);
    return finish(c.report);
  }

  BoundReport piecewise(double p) const {
    validate_request(model_, p, BoundMode::Piecewise);
    const auto& bps = model_.breakpoints();
    Common c = common(p, BoundMode::Piecewise);

    std::vector<double> cuts{model_.a()};
    cuts.insert(cuts.end(), bps.begin(), bps.end());
    cuts.push_back(p);
    cuts.push_back(model_.b());
    std::sort(cuts.begin(), cuts.end());

    const double s = value_sum();
    const double fa = model_.value(model_.a());
    const double fb = model_.value(model_.b());
    fill_piecewise(c.report, cuts, s, std::max(fa - s, s - fb));
    return finish(c.report);
  }

  BoundReport at_breakpoint(double p) const {
    validate_request(model_, p, BoundMode::AtBreakpoint);
    Common c = common(p, BoundMode::AtBreakpoint);

    std::vector<double> cuts{model_.a()};
    cuts.insert(cuts.end(), model_.breakpoints().begin(), model_.breakpoints().end());
    cuts.push_back(model_.b());

    const double s = value_sum();
    const double fa = model_.value(model_.a());
    const double fb = model_.value(model_.b());
    const double fp = model_.value(p);
    fill_piecewise(c.report, cuts, s, std::max(fa + fp - s, s - fp - fb));
    return finish(c.report);
  }

  /// S = f(a) + sum f(p_i) + f(b).
  double value_sum() const {
    double s = model_.value(model_.a()) + model_.value(model_.b());
    for (double q : model_.breakpoints()) s += model_.value(q);
    return s;
  }

 private:
  struct Common {
    BoundReport report;
    SubintervalNorm norm_ap;
    SubintervalNorm norm_pb;
    std::size_t halfmax_argmax = 0;
  };

  static NormConfig split(NormConfig cfg) {
    cfg.split_at_breakpoints = true;
    return cfg;
  }

  static bool exact(const SubintervalNorm& n) { return n.method == NormMethod::ExactProvided; }

  Common common(double p, BoundMode mode) const {
    require_interior(model_, p);
    Common c;
    c.report.p = p;
    c.report.mode = mode;
    c.report.deviation = std::fabs(model_.value(p) - mean_);

    const double a = model_.a();
    const double b = model_.b();
    c.norm_ap = sup_norm(model_, a, p, cfg_);
    c.norm_pb = sup_norm(model_, p, b, cfg_);
    c.report.classical = classical_bound(p, a, b, norm_ab_);
    c.report.halfmax = halfmax_bound(p, a, b, c.norm_ap, c.norm_pb);
    c.report.refined = std::min(c.report.classical, c.report.halfmax);
    c.halfmax_argmax = (b - p) * c.norm_pb.value > (p - a) * c.norm_ap.value ? 1 : 0;
    return c;
  }

  void fill_piecewise(BoundReport& r, const std::vector<double>& cuts, double s,
                      double additive) const {
    const auto norms = segment_norms(model_, cuts, cfg_);
    const SegmentMax m = segment_halfmax(cuts, norms);
    r.piecewise_maxterm = m.value;
    r.argmax_segment = m.argmax;
    r.value_sum = s;
    r.additive_term = additive;
    r.total_bound = m.value + additive;
    r.certified = std::all_of(norms.begin(), norms.end(), exact);
  }

  BoundReport finish(BoundReport r) const {
    if (r.total_bound > 0.0) {
      r.tightness_ratio = r.deviation / r.total_bound;
    } else {
      r.tightness_ratio = 0.0;
      r.tightness_flagged = true;
    }
    if (!integral_.converged)
      r.status = BoundStatus::Inconclusive;
    else if (r.deviation <= r.total_bound + kVerificationSlack)
      r.status = BoundStatus::Holds;
    else
      r.status = BoundStatus::ViolatedObserved;
    return r;
  }

  FunctionModel model_;
  NormConfig cfg_;
  IntegralResult integral_;
  double mean_ = 0.0;
  SubintervalNorm norm_ab_;
};

inline BoundReport refined_bound(const BoundRequest& req, const NormConfig& cfg = {}) {
  if (req.mode != BoundMode::Refined) throw PreconditionError("request mode must be refined");
  return BoundEvaluator(req.model, cfg).refined(req.p);
}

inline BoundReport piecewise_bound(const BoundRequest& req, const NormConfig& cfg = {}) {
  if (req.mode != BoundMode::Piecewise) throw PreconditionError("request mode must be piecewise");
  return BoundEvaluator(req.model, cfg).piecewise(req.p);
}

inline BoundReport breakpoint_bound(const BoundRequest& req, const NormConfig& cfg = {}) {
  if (req.mode != BoundMode::AtBreakpoint)
    throw PreconditionError("request mode must be at-breakpoint");
  return BoundEvaluator(req.model, cfg).at_breakpoint(req.p);
}

inline BoundReport compute_bound(const BoundRequest& req, const NormConfig& cfg = {}) {
  validate_request(req.model, req.p, req.mode);
  return BoundEvaluator(req.model, cfg).evaluate(req.p, req.mode);
}

/// Interior points a + k (b-a) / (grid_size+1), k = 1..grid_size, minus any
/// that coincide with a breakpoint.
inline std::vector<double> sweep_points(const FunctionModel& model, std::size_t grid_size) {
  if (grid_size < 2) throw PreconditionError("grid size must be at least 2");
  std::vector<double> points;
  const double width = model.b() - model.a();
  for (std::size_t k = 1; k <= grid_size; ++k) {
    const double p =
        model.a() + width * static_cast<double>(k) / static_cast<double>(grid_size + 1);
    if (!model.is_breakpoint(p)) points.push_back(p);
  }
  return points;
}

/// Reports at every sweep point, ordered by p. Points are evaluated on up to
/// `threads` workers (0 picks the hardware concurrency).
inline std::vector<BoundReport> sweep(const FunctionModel& model, std::size_t grid_size,
                                      BoundMode mode, const NormConfig& cfg = {},
                                      unsigned threads = 0) {
  if (mode == BoundMode::AtBreakpoint)
    throw PreconditionError("sweep does not support at-breakpoint mode");
  const std::vector<double> points = sweep_points(model, grid_size);
  for (double p : points) validate_request(model, p, mode);
  const BoundEvaluator evaluator(model, cfg);

  std::vector<BoundReport> out(points.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(points.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      try {
        out[i] = evaluator.evaluate(points[i], mode);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = points.size();
      }
    }
  };
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace ostrowski
