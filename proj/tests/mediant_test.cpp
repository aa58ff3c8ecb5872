#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "ostrowski/mediant.hpp"

using namespace ostrowski;

TEST(Mediant, Examples) {
  EXPECT_DOUBLE_EQ(mediant(RatioList({1, 2, 3}, {1, 1, 1})), 2.0);
  EXPECT_DOUBLE_EQ(mediant(RatioList({1, 3}, {2, 4})), 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(mediant(RatioList({5}, {2})), 2.5);
}

TEST(Mediant, RejectsBadInput) {
  EXPECT_THROW(RatioList({}, {}), PreconditionError);
  EXPECT_THROW(RatioList({1, 2}, {1}), PreconditionError);
  EXPECT_THROW(RatioList({1, 2}, {1, 0}), PreconditionError);
  EXPECT_THROW(RatioList({1}, {-2}), PreconditionError);
}

TEST(ConvexWeights, Examples) {
  EXPECT_EQ(convex_weights(RatioList({0, 0}, {1, 1})), (std::vector<double>{0.5, 0.5}));
  const auto w = convex_weights(RatioList({7, -1}, {2, 4}));
  EXPECT_DOUBLE_EQ(w[0], 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(w[1], 2.0 / 3.0);
  EXPECT_EQ(convex_weights(RatioList({9}, {3})), (std::vector<double>{1.0}));
}

namespace {

RatioList random_list(std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> len(1, 8);
  std::uniform_real_distribution<double> num(-100.0, 100.0);
  std::uniform_real_distribution<double> den(0.0, 100.0);
  const std::size_t n = len(rng);
  std::vector<double> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = num(rng);
    do b[i] = den(rng);
    while (b[i] == 0.0);
  }
  return RatioList(a, b);
}

}  // namespace

TEST(MediantProperties, WeightsFormAConvexCombination) {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 10000; ++it) {
    const RatioList r = random_list(rng);
    const auto w = convex_weights(r);
    ASSERT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 1.0, 1e-12);
    double combo = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      ASSERT_GT(w[i], 0.0);
      combo += w[i] * r.ratio(i);
    }
    const double m = mediant(r);
    // Rounding in either sum is relative to the absolute mass sum|a| / sum b.
    double abs_mass = 0.0, den = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      abs_mass += std::fabs(r.numerators()[i]);
      den += r.denominators()[i];
    }
    ASSERT_NEAR(combo, m, 1e-12 * std::max({1.0, std::fabs(m), abs_mass / den}));
  }
}

TEST(MediantProperties, SandwichedBetweenExtremeRatios) {
  std::mt19937_64 rng(5);
  for (int it = 0; it < 10000; ++it) {
    const RatioList r = random_list(rng);
    const double m = mediant(r);
    const double slack = 1e-12 * std::max({1.0, std::fabs(r.min_ratio()), std::fabs(r.max_ratio())});
    ASSERT_LE(r.min_ratio(), m + slack);
    ASSERT_LE(m, r.max_ratio() + slack);
  }
}

TEST(MediantProperties, EqualityWhenAllRatiosAgree) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> den(0.5, 50.0);
  // Ratios that are small dyadic numbers times dyadic denominators keep
  // every product exact, so equality can be asserted bit-for-bit.
  for (double ratio : {-2.5, 0.0, 0.75, 4.0}) {
    for (int it = 0; it < 100; ++it) {
      std::vector<double> a, b;
      for (int i = 0; i < 1 + it % 8; ++i) {
        const double d = std::ldexp(std::floor(den(rng)) + 1.0, -3);
        b.push_back(d);
        a.push_back(ratio * d);
      }
      const RatioList r(a, b);
      ASSERT_EQ(r.min_ratio(), ratio);
      ASSERT_EQ(r.max_ratio(), ratio);
      ASSERT_EQ(mediant(r), ratio);
    }
  }
}

TEST(MediantProperties, StrictWhenRatiosDiffer) {
  const RatioList r({1, 3, 10}, {1, 1, 2});
  EXPECT_LT(r.min_ratio(), mediant(r));
  EXPECT_LT(mediant(r), r.max_ratio());
}

TEST(MediantProperties, PermutationAndScaleInvariance) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int it = 0; it < 1000; ++it) {
    const RatioList r = random_list(rng);
    std::vector<std::size_t> idx(r.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    std::vector<double> a, b, sa, sb;
    const double k = scale(rng);
    for (std::size_t i : idx) {
      a.push_back(r.numerators()[i]);
      b.push_back(r.denominators()[i]);
    }
    for (std::size_t i = 0; i < r.size(); ++i) {
      sa.push_back(k * r.numerators()[i]);
      sb.push_back(k * r.denominators()[i]);
    }
    const double m = mediant(r);
    const double tol = 1e-12 * std::max(1.0, std::fabs(m));
    ASSERT_NEAR(mediant(RatioList(a, b)), m, tol);
    ASSERT_NEAR(mediant(RatioList(sa, sb)), m, tol);
  }
}
