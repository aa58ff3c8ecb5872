#pragma once

// Test-only reference computations. Nothing here calls into the library's
// differentiation, quadrature or norm code.

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

/// Fourth-order central difference.
inline double central_difference(const std::function<double(double)>& f, double x,
                                 double h = 1e-3) {
  return (8.0 * (f(x + h) - f(x - h)) - (f(x + 2 * h) - f(x - 2 * h))) / (12.0 * h);
}

/// Exact integral of the piecewise-linear interpolant through the nodes.
inline double piecewise_linear_integral(const std::vector<std::pair<double, double>>& nodes) {
  double total = 0.0;
  for (std::size_t i = 1; i < nodes.size(); ++i)
    total += 0.5 * (nodes[i].second + nodes[i - 1].second) * (nodes[i].first - nodes[i - 1].first);
  return total;
}

/// Polynomial with explicit coefficients c0 + c1 x + ... ; evaluation,
/// derivative and antiderivative by Horner, and a textual form for the parser.
struct Polynomial {
  std::vector<double> coeffs;

  double operator()(double x) const {
    double v = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * x + *it;
    return v;
  }
  double derivative(double x) const {
    double v = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 1;) v = v * x + static_cast<double>(k) * coeffs[k];
    return v;
  }
  double antiderivative(double x) const {
    double v = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) v = v * x + coeffs[k] / static_cast<double>(k + 1);
    return v * x;
  }
  double integral(double lo, double hi) const { return antiderivative(hi) - antiderivative(lo); }

  std::string text() const {
    std::string s = "0";
    char buf[64];
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      std::snprintf(buf, sizeof buf, " + (%.17g)*x^%zu", coeffs[k], k);
      s += buf;
    }
    return s;
  }
};

inline Polynomial random_polynomial(std::mt19937_64& rng, std::size_t max_degree,
                                    double coeff_range = 3.0) {
  std::uniform_int_distribution<std::size_t> deg(0, max_degree);
  std::uniform_real_distribution<double> c(-coeff_range, coeff_range);
  Polynomial p;
  p.coeffs.resize(deg(rng) + 1);
  for (auto& v : p.coeffs) v = c(rng);
  return p;
}

}  // namespace oracle
