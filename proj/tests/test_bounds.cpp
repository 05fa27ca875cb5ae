#include <gtest/gtest.h>

#include <random>

#include "chipfire/bounds.hpp"
#include "chipfire/exact.hpp"
#include "support/corpus.hpp"

namespace chipfire {
namespace {

using testing::c3;
using testing::d2;
using testing::g2;

constexpr Vertex a = 0, b = 1, c = 2;

TEST(Bounds, Step) {
  EXPECT_EQ(bound_step(g2(), {0, 0}, b), (Configuration{0, 1}));
  EXPECT_EQ(bound_step(g2(), {0, 1}, a), (Configuration{2, 0}));
  EXPECT_EQ(bound_step(c3(), {0, 0, 0}, c), (Configuration{0, 0, 1}));
}

TEST(Bounds, DeltaTotal) {
  EXPECT_EQ(delta_total(g2(), {0, 0}, a), 2u);
  EXPECT_EQ(delta_total(g2(), {2, 0}, b), 0u);
  // The stepped vertex never contributes: E(v, v) = 0.
  EXPECT_EQ(delta_total(g2(), {0, 0}, b), 1u);
}

TEST(Bounds, RunBoundHandTrace) {
  // (0,0) -a-> (2,0) -b-> (1,1) -b-> (0,2)
  const std::vector<Vertex> abb{a, b, b};
  const BoundTrace t = run_bound(g2(), abb);
  ASSERT_EQ(t.states.size(), 4u);
  EXPECT_EQ(t.states[1], (Configuration{2, 0}));
  EXPECT_EQ(t.states[2], (Configuration{1, 1}));
  EXPECT_EQ(t.states[3], (Configuration{0, 2}));
  EXPECT_EQ(t.totals, (std::vector<Count>{0, 2, 2, 2}));

  const std::vector<Vertex> bab{b, a, b};
  const BoundTrace u = run_bound(g2(), bab);
  EXPECT_EQ(u.states[3], (Configuration{1, 1}));
  EXPECT_EQ(u.totals, (std::vector<Count>{0, 1, 2, 2}));

  const BoundTrace empty = run_bound(g2(), {});
  ASSERT_EQ(empty.states.size(), 1u);
  EXPECT_EQ(empty.states[0], (Configuration{0, 0}));
}

TEST(Bounds, GainOfGood) {
  const PeriodData pg = primitive_period_vector(g2());
  EXPECT_EQ(gain_of_good(g2(), PrimitiveSequence(pg, {a, b, b})), 2u);
  EXPECT_EQ(gain_of_good(g2(), PrimitiveSequence(pg, {b, b, a})), 2u);
  const PeriodData pc = primitive_period_vector(c3());
  // B(2) = (1,1,0) along a, b; the reverse orientation reaches (0,0,1).
  EXPECT_EQ(gain_of_good(c3(), PrimitiveSequence(pc, {a, b, c})), 2u);
  EXPECT_EQ(gain_of_good(c3(), PrimitiveSequence(pc, {a, c, b})), 1u);
  const PeriodData pd = primitive_period_vector(d2());
  EXPECT_EQ(gain_of_good(d2(), PrimitiveSequence(pd, {a, b})), 1u);
}

TEST(Bounds, NotPrimitive) {
  const PeriodData pg = primitive_period_vector(g2());
  try {
    PrimitiveSequence(pg, {a, a, b});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kNotPrimitive);
  }
  EXPECT_THROW(PrimitiveSequence(pg, {a, b}), Error);
  EXPECT_THROW(PrimitiveSequence(pg, {a, b, 7}), Error);
}

TEST(Bounds, EvolIdentityExamples) {
  const std::vector<Vertex> abb{a, b, b};
  EXPECT_TRUE(check_evol_identity(g2(), abb, 0, 3, a));
  EXPECT_TRUE(check_evol_identity(g2(), abb, 1, 2, b));
}

TEST(Bounds, RandomizedTraceProperties) {
  std::mt19937_64 rng(2024);
  for (int sample = 0; sample < 2000; ++sample) {
    const std::size_t n = 2 + rng() % 5;
    const Multigraph g = random_strongly_connected(n, 1 + rng() % 3, (rng() % 5) / 4.0, rng());
    std::vector<Vertex> prefix(1 + rng() % 25);
    for (auto& v : prefix) v = rng() % n;
    const BoundTrace t = run_bound(g, prefix);
    for (std::size_t k = 0; k < prefix.size(); ++k) {
      ASSERT_LE(t.totals[k], t.totals[k + 1]);
      ASSERT_EQ(t.totals[k + 1] - t.totals[k], delta_total(g, t.states[k], prefix[k]));
      if (t.totals[k + 1] == t.totals[k]) {
        for (Vertex w = 0; w < n; ++w) ASSERT_GE(t.states[k][w], g.edges(prefix[k], w));
      }
    }
    const std::size_t start = rng() % prefix.size();
    const std::size_t len = 1 + rng() % (prefix.size() - start);
    ASSERT_TRUE(check_evol_identity(g, prefix, start, len, rng() % n));
  }
}

// Gains of good strategies are reached at step P-1 and stay put.
TEST(Bounds, GoodStrategiesStabilize) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Multigraph g = random_strongly_connected(3, 2, 0.5, seed);
    const PeriodData p = primitive_period_vector(g);
    for (const PrimitiveSequence& s : enumerate_primitive_sequences(p)) {
      const auto totals = periodic_totals(g, s.vertices(), 5 * p.length);
      for (std::size_t k = p.length - 1; k <= 5 * p.length; ++k) {
        ASSERT_EQ(totals[k], totals[p.length - 1]);
      }
      ASSERT_EQ(totals[p.length - 1], gain_of_good(g, s));
    }
  }
}

}  // namespace
}  // namespace chipfire
