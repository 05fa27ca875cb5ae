#include <gtest/gtest.h>

#include "chipfire/exact.hpp"
#include "support/corpus.hpp"

namespace chipfire {
namespace {

using testing::c3;
using testing::d2;
using testing::g2;

constexpr Vertex a = 0, b = 1, c = 2;

TEST(Exact, EnumerateSequences) {
  const auto two = enumerate_primitive_sequences(PeriodData{{1, 1}, 2});
  ASSERT_EQ(two.size(), 2u);
  EXPECT_EQ(two[0].vertices(), (std::vector<Vertex>{a, b}));
  EXPECT_EQ(two[1].vertices(), (std::vector<Vertex>{b, a}));

  const auto three = enumerate_primitive_sequences(PeriodData{{1, 2}, 3});
  ASSERT_EQ(three.size(), 3u);
  EXPECT_EQ(three[0].vertices(), (std::vector<Vertex>{a, b, b}));
  EXPECT_EQ(three[1].vertices(), (std::vector<Vertex>{b, a, b}));
  EXPECT_EQ(three[2].vertices(), (std::vector<Vertex>{b, b, a}));

  EXPECT_EQ(enumerate_primitive_sequences(PeriodData{{1, 1, 1}, 3}).size(), 6u);
}

TEST(Exact, SequenceCountIsMultinomial) {
  EXPECT_EQ(count_primitive_sequences(PeriodData{{1, 2}, 3}), 3u);
  EXPECT_EQ(count_primitive_sequences(PeriodData{{3, 3, 3, 3}, 12}), 369600u);
  const PeriodData p{{2, 1, 3}, 6};
  EXPECT_EQ(count_primitive_sequences(p), enumerate_primitive_sequences(p).size());
  const auto all = enumerate_primitive_sequences(p);
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
  EXPECT_EQ(std::adjacent_find(all.begin(), all.end()), all.end());
}

TEST(Exact, StrategiesMicroInstances) {
  const InstabilityResult rg = instability_by_strategies(g2());
  EXPECT_EQ(rg.c, 2u);
  EXPECT_EQ(rg.optimal_sequence->vertices(), (std::vector<Vertex>{a, b, b}));
  EXPECT_EQ(instability_by_strategies(c3()).c, 1u);
  EXPECT_EQ(instability_by_strategies(c3()).optimal_sequence->vertices(), (std::vector<Vertex>{a, c, b}));
  EXPECT_EQ(instability_by_strategies(d2()).c, 1u);
  const InstabilityResult one = instability_by_strategies(testing::single());
  EXPECT_EQ(one.c, 0u);
  EXPECT_TRUE(one.degenerate);
}

TEST(Exact, NodeBudget) {
  const Multigraph g = random_strongly_connected(5, 2, 0.6, 3);
  SearchOptions opt;
  opt.node_budget = 3;
  try {
    instability_by_strategies(g, opt);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kLimitExceeded);
  }
}

TEST(Exact, PrunedMatchesUnprunedAndThreads) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const Multigraph g = random_strongly_connected(2 + seed % 3, 2, 0.5, seed);
    const PeriodData p = primitive_period_vector(g);
    if (p.length > 9) continue;
    SearchOptions one;
    SearchOptions many;
    many.threads = 4;
    const InstabilityResult r1 = instability_by_strategies(g, one);
    const InstabilityResult r4 = instability_by_strategies(g, many);
    EXPECT_EQ(r1.c, testing::min_gain_unpruned(g, p)) << seed;
    EXPECT_EQ(r1.c, r4.c);
    EXPECT_EQ(r1.optimal_sequence, r4.optimal_sequence);
    EXPECT_EQ(r1.nodes, r4.nodes);
    EXPECT_EQ(gain_of_good(g, *r1.optimal_sequence), r1.c);
    // Lexicographically smallest optimum.
    for (const PrimitiveSequence& s : enumerate_primitive_sequences(p)) {
      if (gain_of_good(g, s) == r1.c) {
        EXPECT_EQ(s, *r1.optimal_sequence);
        break;
      }
    }
  }
}

TEST(Exact, WitnessMicroInstances) {
  for (const Multigraph& g : {g2(), d2(), c3()}) {
    const InstabilityResult r = instability_by_strategies(g);
    const Configuration w = extract_witness(g, *r.optimal_sequence);
    EXPECT_EQ(w.total(), r.c);
    EXPECT_TRUE(is_infinite(classify(g, w)));
  }
  // Witness of a non-optimal sequence still starts an infinite game.
  const PeriodData pc = primitive_period_vector(c3());
  const Configuration w = extract_witness(c3(), PrimitiveSequence(pc, {a, b, c}));
  EXPECT_EQ(w.total(), 2u);
  EXPECT_TRUE(is_infinite(classify(c3(), w)));
}

TEST(Exact, FeedbackNumber) {
  EXPECT_EQ(feedback_number(c3()), 1u);
  EXPECT_EQ(feedback_number(g2()), 1u);
  EXPECT_EQ(feedback_number(d2()), 1u);
  EXPECT_EQ(feedback_number(testing::single()), 0u);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const Multigraph g = random_strongly_connected(2 + seed % 5, 3, 0.5, seed);
    EXPECT_EQ(feedback_number(g), testing::feedback_by_permutations(g));
  }
}

}  // namespace
}  // namespace chipfire
