#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ostrowski/means.hpp"

using namespace ostrowski;

namespace {

void expect_rel(double actual, double expected, double rel) {
  EXPECT_NEAR(actual, expected, rel * std::fabs(expected));
}

std::pair<double, double> random_pair(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(0.0, 1e6);
  for (;;) {
    double a = dist(rng), b = dist(rng);
    if (b < a) std::swap(a, b);
    if (a > 0.0 && a < b) return {a, b};
  }
}

}  // namespace

TEST(Means, Examples) {
  const auto m = compute_means(1, 2);
  EXPECT_EQ(m.A, 1.5);
  EXPECT_NEAR(m.G, std::numbers::sqrt2, 1e-15);
  EXPECT_NEAR(m.H, 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(m.L, 1.0 / std::numbers::ln2, 1e-15);

  EXPECT_EQ(compute_means(1, 4).G, 2.0);

  const auto near = compute_means(1, 1 + 1e-8);
  for (double v : {near.A, near.G, near.H, near.L}) EXPECT_NEAR(v, 1.0, 1e-7);
}

TEST(Means, Errors) {
  EXPECT_THROW(compute_means(2, 1), PreconditionError);
  EXPECT_THROW(compute_means(1, 1), PreconditionError);
  EXPECT_THROW(compute_means(0, 1), PreconditionError);
  EXPECT_THROW(compute_means(-1, 1), PreconditionError);
  EXPECT_THROW(refined_mean_bounds(3, 3), PreconditionError);
}

TEST(RefinedMeanBounds, UnitToTwo) {
  const auto r = refined_mean_bounds(1, 2);
  const double L = 1.0 / std::numbers::ln2;
  const double G = std::numbers::sqrt2;
  const double H = 4.0 / 3.0;

  expect_rel(r.ineq_i.lhs, 1.5 - L, 1e-12);
  expect_rel(r.ineq_i.lhs, 0.0573050, 1e-6);
  expect_rel(r.ineq_i.rhs, 0.5410106, 1e-6);
  EXPECT_TRUE(r.ineq_i.holds);

  expect_rel(r.ineq_ii.lhs, L - G, 1e-12);
  expect_rel(r.ineq_ii.lhs, 0.0284815, 1e-5);
  expect_rel(r.ineq_ii.rhs, (G - 1) / 2, 1e-15);
  expect_rel(r.ineq_ii.rhs, 0.2071068, 1e-6);
  EXPECT_TRUE(r.ineq_ii.holds);

  expect_rel(r.ineq_iii.lhs, L - H, 1e-12);
  expect_rel(r.ineq_iii.lhs, 0.1093617, 1e-6);
  EXPECT_DOUBLE_EQ(r.ineq_iii.rhs, 0.1875);
  EXPECT_TRUE(r.ineq_iii.holds);
}

TEST(ReciprocalDeviation, Examples) {
  const double L = compute_means(1, 2).L;
  const auto at_mean = reciprocal_deviation_bound(1, 2, L);
  EXPECT_NEAR(at_mean.lhs, 0.0, 1e-16);
  EXPECT_TRUE(at_mean.holds);

  const auto mid = reciprocal_deviation_bound(1, 2, 1.5);
  EXPECT_NEAR(mid.lhs, std::fabs(std::numbers::ln2 - 1.0 / 1.5), 1e-15);
  EXPECT_NEAR(mid.lhs, 0.0264805, 1e-7);
  EXPECT_DOUBLE_EQ(mid.rhs, 0.25);
  EXPECT_TRUE(mid.holds);

  EXPECT_THROW(reciprocal_deviation_bound(1, 2, 2.0), PreconditionError);
  EXPECT_THROW(reciprocal_deviation_bound(2, 1, 1.5), PreconditionError);
}

TEST(ReciprocalDeviation, ClassicalPartRescalesToFirstArguments) {
  // The first entry of each minimum is G L (resp. H L) times the classical
  // reciprocal bound; the halfmax entry has no such counterpart.
  std::mt19937_64 rng(43);
  for (int it = 0; it < 1000; ++it) {
    const auto [a, b] = random_pair(rng);
    const auto m = compute_means(a, b);
    const double w = b - a;
    for (double p : {m.G, m.H}) {
      const double classical = ((p - a) * (p - a) + (b - p) * (b - p)) / (2.0 * w) / (a * a);
      const double t = (p - m.A) / w;
      const double first = p * m.L * w / (a * a) * (0.25 + t * t);
      ASSERT_NEAR(p * m.L * classical, first, 1e-12 * first);
    }
  }
}

TEST(MeansProperties, StrictOrdering) {
  std::mt19937_64 rng(47);
  for (int it = 0; it < 10000; ++it) {
    const auto [a, b] = random_pair(rng);
    const auto m = compute_means(a, b);
    ASSERT_LT(a, m.H);
    ASSERT_LT(m.H, m.G);
    ASSERT_LT(m.G, m.L);
    ASSERT_LT(m.L, m.A);
    ASSERT_LT(m.A, b);
  }
}

TEST(MeansProperties, Homogeneous) {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> scale(1e-3, 1e3);
  for (int it = 0; it < 1000; ++it) {
    const auto [a, b] = random_pair(rng);
    const double k = scale(rng);
    const auto m = compute_means(a, b);
    const auto s = compute_means(k * a, k * b);
    ASSERT_NEAR(s.A, k * m.A, 1e-12 * k * m.A);
    ASSERT_NEAR(s.G, k * m.G, 1e-12 * k * m.G);
    ASSERT_NEAR(s.H, k * m.H, 1e-12 * k * m.H);
    ASSERT_NEAR(s.L, k * m.L, 1e-12 * k * m.L);
  }
}

TEST(MeansProperties, ArithmeticGapBoundHolds) {
  std::mt19937_64 rng(59);
  for (int it = 0; it < 10000; ++it) {
    const auto [a, b] = random_pair(rng);
    const auto r = refined_mean_bounds(a, b);
    ASSERT_TRUE(r.ineq_i.holds) << a << ", " << b;
  }
}

TEST(MeansProperties, HomogeneousGapBoundHoldsAtEveryMean) {
  std::mt19937_64 rng(61);
  for (int it = 0; it < 10000; ++it) {
    const auto [a, b] = random_pair(rng);
    const auto m = compute_means(a, b);
    for (double p : {m.H, m.G, m.A}) {
      if (!(a < p && p < b)) continue;
      const auto c = mean_gap_bound(a, b, p);
      ASSERT_TRUE(c.holds) << a << ", " << b << ", p = " << p;
    }
  }
}

TEST(MeansProperties, LiteralSecondArgumentsAreNotScaleInvariant) {
  // At (1, 2) both minima are set by their second entries, which scale like
  // 1/k while the left-hand sides scale like k.
  const auto base = refined_mean_bounds(1, 2);
  const auto big = refined_mean_bounds(1000, 2000);
  expect_rel(big.ineq_ii.lhs, 1000 * base.ineq_ii.lhs, 1e-12);
  expect_rel(big.ineq_ii.rhs, base.ineq_ii.rhs / 1000, 1e-12);
  EXPECT_FALSE(big.ineq_ii.holds);
  EXPECT_FALSE(big.ineq_iii.holds);
}
