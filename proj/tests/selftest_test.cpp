#include <gtest/gtest.h>

#include <sstream>
#include <string>

#include "ostrowski/selftest.hpp"

using namespace ostrowski;

namespace {

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST(Selftest, CorrectBuildPasses) {
  std::ostringstream out;
  EXPECT_EQ(selftest_exit_code(out), 0) << out.str();
  EXPECT_EQ(count_lines(out.str()), 4u);
  EXPECT_EQ(out.str().find("FAIL"), std::string::npos);
}

TEST(Selftest, EachSuiteRunsItsIterations) {
  std::ostringstream out;
  const auto results = run_selftest(out);
  ASSERT_EQ(results.size(), 4u);
  EXPECT_EQ(results[0].name, "mediant-sandwich");
  EXPECT_EQ(results[1].name, "form-equivalence");
  EXPECT_EQ(results[2].name, "dominance-chain");
  EXPECT_EQ(results[3].name, "means-ordering");
  for (const auto& r : results) {
    EXPECT_GE(r.checks, 990u) << r.name;
    EXPECT_LE(r.checks, 1000u) << r.name;
  }
}

TEST(Selftest, SignFlippedHalfmaxIsCaught) {
  SelftestHooks hooks;
  hooks.halfmax = [](double p, double a, double b, const SubintervalNorm& l,
                     const SubintervalNorm& r) { return -halfmax_bound(p, a, b, l, r); };
  std::ostringstream out;
  EXPECT_EQ(selftest_exit_code(out, hooks), 3);
  EXPECT_EQ(count_lines(out.str()), 4u);
  EXPECT_NE(out.str().find("FAIL dominance-chain"), std::string::npos) << out.str();
  EXPECT_NE(out.str().find("PASS mediant-sandwich"), std::string::npos);
}
