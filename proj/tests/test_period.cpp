#include <gtest/gtest.h>

#include <numeric>

#include "chipfire/period.hpp"
#include "support/corpus.hpp"

namespace chipfire {
namespace {

TEST(Period, Cycle) {
  const PeriodData p = primitive_period_vector(testing::c3());
  EXPECT_EQ(p.vector, (std::vector<Count>{1, 1, 1}));
  EXPECT_EQ(p.length, 3u);
}

TEST(Period, TwoVertexUnbalanced) {
  // [[2,-1],[-2,1]] u = 0  =>  u_b = 2 u_a.
  const PeriodData p = primitive_period_vector(testing::g2());
  EXPECT_EQ(p.vector, (std::vector<Count>{1, 2}));
  EXPECT_EQ(p.length, 3u);
}

TEST(Period, SingleVertex) {
  const PeriodData p = primitive_period_vector(testing::single());
  EXPECT_EQ(p.vector, (std::vector<Count>{1}));
  EXPECT_EQ(p.length, 1u);
}

TEST(Period, RejectsNotStronglyConnected) {
  try {
    primitive_period_vector(Multigraph::build({}, {{"a", "b", 1}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotStronglyConnected);
  }
}

TEST(Period, VerifyMembership) {
  const Multigraph g = testing::g2();
  EXPECT_TRUE(verify_period(g, {1, 2}));
  EXPECT_TRUE(verify_period(g, {2, 4}));
  EXPECT_FALSE(verify_period(g, {1, 1}));
  EXPECT_FALSE(verify_period(g, {0, 0}));
  EXPECT_FALSE(verify_period(g, {1}));
}

TEST(Period, PropertiesOnRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    const std::size_t n = 2 + seed % 7;
    const Multigraph g = random_strongly_connected(n, 1 + seed % 4, (seed % 5) / 4.0, seed);
    const PeriodData p = primitive_period_vector(g);
    ASSERT_TRUE(verify_period(g, p.vector)) << seed;
    Count gcd = 0;
    for (Count x : p.vector) {
      EXPECT_GE(x, 1u);
      gcd = std::gcd(gcd, x);
    }
    EXPECT_EQ(gcd, 1u);
    EXPECT_EQ(p.length, std::accumulate(p.vector.begin(), p.vector.end(), Count{0}));
    EXPECT_GE(p.length, n);
    for (Count k = 2; k <= 4; ++k) {
      std::vector<Count> scaled = p.vector;
      for (auto& x : scaled) x *= k;
      EXPECT_TRUE(verify_period(g, scaled));
    }
    if (is_eulerian(g)) {
      EXPECT_EQ(p.vector, std::vector<Count>(n, 1));
      EXPECT_EQ(p.length, n);
    }
  }
}

}  // namespace
}  // namespace chipfire
