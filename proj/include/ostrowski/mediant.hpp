#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

#include "ostrowski/error.hpp"

namespace ostrowski {

/// Ratios a_i / b_i with strictly positive denominators.
class RatioList {
 public:
  RatioList(std::vector<double> numerators, std::vector<double> denominators)
      : num_(std::move(numerators)), den_(std::move(denominators)) {
    if (num_.empty()) throw PreconditionError("ratio list is empty");
    if (num_.size() != den_.size())
      throw PreconditionError("numerator and denominator lists differ in length");
    for (double d : den_)
      if (!(d > 0.0)) throw PreconditionError("denominators must be strictly positive");
  }

  std::span<const double> numerators() const { return num_; }
  std::span<const double> denominators() const { return den_; }
  std::size_t size() const { return num_.size(); }

  double ratio(std::size_t i) const { return num_[i] / den_[i]; }

  double min_ratio() const {
    double m = ratio(0);
    for (std::size_t i = 1; i < size(); ++i) m = std::min(m, ratio(i));
    return m;
  }

  double max_ratio() const {
    double m = ratio(0);
    for (std::size_t i = 1; i < size(); ++i) m = std::max(m, ratio(i));
    return m;
  }

 private:
  std::vector<double> num_;
  std::vector<double> den_;
};

/// (a_1 + ... + a_n) / (b_1 + ... + b_n). Lies between the smallest and the
/// largest a_i / b_i.
inline double mediant(const RatioList& r) {
  const auto n = r.numerators();
  const auto d = r.denominators();
  return std::accumulate(n.begin(), n.end(), 0.0) / std::accumulate(d.begin(), d.end(), 0.0);
}

/// w_i = b_i / sum(b), so that mediant(r) == sum(w_i * a_i / b_i).
inline std::vector<double> convex_weights(const RatioList& r) {
  const auto d = r.denominators();
  const double total = std::accumulate(d.begin(), d.end(), 0.0);
  std::vector<double> w;
  w.reserve(d.size());
  for (double b : d) w.push_back(b / total);
  return w;
}

}  // namespace ostrowski
