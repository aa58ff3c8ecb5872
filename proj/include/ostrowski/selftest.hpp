#pragma once

// Compact property suites shipped with the library so an installed build can
// check itself: mediant sandwich, classical form equivalence, the
// deviation <= refined <= classical chain and the ordering of the means.

#include <cmath>
#include <cstddef>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "ostrowski/bounds.hpp"
#include "ostrowski/means.hpp"
#include "ostrowski/mediant.hpp"

namespace ostrowski {

struct SelftestHooks {
  /// Replaceable so that tests can inject a faulty formula and watch the
  /// dominance suite catch it.
  std::function<double(double, double, double, const SubintervalNorm&, const SubintervalNorm&)>
      halfmax = halfmax_bound;
};

struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool passed() const { return failures == 0 && checks > 0; }
};

namespace detail {

inline void record(SuiteResult& s, bool ok, const std::string& what) {
  ++s.checks;
  if (!ok && s.failures++ == 0) s.first_failure = what;
}

inline SuiteResult mediant_suite(std::size_t iterations, std::mt19937_64& rng) {
  SuiteResult s;
  s.name = "mediant-sandwich";
  std::uniform_int_distribution<std::size_t> len(1, 8);
  std::uniform_real_distribution<double> num(-100.0, 100.0);
  std::uniform_real_distribution<double> den(0.0, 100.0);
  for (std::size_t it = 0; it < iterations; ++it) {
    const std::size_t n = len(rng);
    std::vector<double> as(n), bs(n);
    for (std::size_t i = 0; i < n; ++i) {
      as[i] = num(rng);
      do bs[i] = den(rng);
      while (bs[i] == 0.0);
    }
    const RatioList r(as, bs);
    const double m = mediant(r);
    const double lo = r.min_ratio();
    const double hi = r.max_ratio();
    const double slack = 1e-12 * std::max({1.0, std::fabs(lo), std::fabs(hi)});
    record(s, lo <= m + slack && m <= hi + slack, "mediant outside [min, max] ratio");
  }
  return s;
}

inline SuiteResult form_suite(std::size_t iterations, std::mt19937_64& rng) {
  SuiteResult s;
  s.name = "form-equivalence";
  std::uniform_real_distribution<double> endpoint(-100.0, 100.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t it = 0; it < iterations; ++it) {
    double a = endpoint(rng), b = endpoint(rng);
    if (a == b) continue;
    if (b < a) std::swap(a, b);
    double p = a + (b - a) * unit(rng);
    if (!(a < p && p < b)) p = 0.5 * (a + b);
    const double f50 = classical_factor(p, a, b);
    const double fq = classical_factor_quotient(p, a, b);
    record(s, std::fabs(f50 - fq) <= 1e-12 * std::fabs(fq), "classical forms disagree");
  }
  return s;
}

inline SuiteResult dominance_suite(std::size_t iterations, const SelftestHooks& hooks) {
  SuiteResult s;
  s.name = "dominance-chain";
  struct Case {
    const char* expr;
    double a, b;
  };
  const Case corpus[] = {
      {"x^2", 0.0, 1.0},         {"x^3 - 2*x + 1", -1.0, 2.0}, {"exp(x)", 0.0, 2.0},
      {"1/x", 1.0, 2.0},         {"sin(x)", 0.0, 3.0},
  };
  const std::size_t per_case = (iterations + std::size(corpus) - 1) / std::size(corpus);
  for (const auto& c : corpus) {
    const BoundEvaluator ev(FunctionModel::from_text(c.expr, c.a, c.b));
    const auto& model = ev.model();
    for (std::size_t k = 1; k <= per_case && s.checks < iterations; ++k) {
      const double p = c.a + (c.b - c.a) * static_cast<double>(k) / static_cast<double>(per_case + 1);
      const double dev = std::fabs(model.value(p) - ev.integral_mean());
      const auto nab = sup_norm(model, c.a, c.b);
      const auto nap = sup_norm(model, c.a, p);
      const auto npb = sup_norm(model, p, c.b);
      const double classical = classical_bound(p, c.a, c.b, nab);
      const double refined = std::min(classical, hooks.halfmax(p, c.a, c.b, nap, npb));
      record(s, dev <= refined + kVerificationSlack && refined <= classical,
             std::string("chain broken for ") + c.expr + " at p = " + std::to_string(p));
    }
  }
  return s;
}

inline SuiteResult means_suite(std::size_t iterations, std::mt19937_64& rng) {
  SuiteResult s;
  s.name = "means-ordering";
  std::uniform_real_distribution<double> dist(0.0, 1e6);
  for (std::size_t it = 0; it < iterations; ++it) {
    double a = dist(rng), b = dist(rng);
    if (b < a) std::swap(a, b);
    if (!(a > 0.0 && a < b)) continue;
    const MeansReport m = compute_means(a, b);
    record(s, a < m.H && m.H < m.G && m.G < m.L && m.L < m.A && m.A < b,
           "means out of order for a = " + std::to_string(a) + ", b = " + std::to_string(b));
  }
  return s;
}

}  // namespace detail

inline std::vector<SuiteResult> run_selftest(std::ostream& out, const SelftestHooks& hooks = {},
                                             std::size_t iterations = 1000) {
  std::mt19937_64 rng(20240601);
  std::vector<SuiteResult> results;
  results.push_back(detail::mediant_suite(iterations, rng));
  results.push_back(detail::form_suite(iterations, rng));
  results.push_back(detail::dominance_suite(iterations, hooks));
  results.push_back(detail::means_suite(iterations, rng));
  for (const auto& r : results) {
    out << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.checks << " checks, "
        << r.failures << " failures)";
    if (!r.passed() && !r.first_failure.empty()) out << ": " << r.first_failure;
    out << '\n';
  }
  return results;
}

/// 0 when every suite passes, 3 otherwise.
inline int selftest_exit_code(std::ostream& out, const SelftestHooks& hooks = {}) {
  const auto results = run_selftest(out, hooks);
  for (const auto& r : results)
    if (!r.passed()) return 3;
  return 0;
}

}  // namespace ostrowski
