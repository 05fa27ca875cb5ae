#include <gtest/gtest.h>

#include <random>

#include "chipfire/io.hpp"
#include "chipfire/report.hpp"
#include "support/corpus.hpp"

namespace chipfire {
namespace {

ErrorKind parse_error_kind(std::string_view text, std::string* message = nullptr) {
  try {
    parse_graph(text);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.kind();
  }
  ADD_FAILURE() << "no error for: " << text;
  return ErrorKind::kInvalidArgument;
}

TEST(Io, ParseExamples) {
  EXPECT_EQ(parse_graph("a b 2\nb a 1\n"), testing::g2());
  EXPECT_EQ(parse_graph("# c3\na b 1\nb c 1\nc a 1\n"), testing::c3());
  EXPECT_EQ(parse_graph("a b 1\n\nb a 1\na b 1"), testing::g2());
  const Multigraph iso = parse_graph("vertex x\na b 1\nb a 1\n");
  EXPECT_EQ(iso.size(), 3u);
  EXPECT_EQ(iso.name(0), "x");
  EXPECT_FALSE(is_strongly_connected(iso));
}

TEST(Io, ParseErrors) {
  std::string message;
  EXPECT_EQ(parse_error_kind("a a 1", &message), ErrorKind::kLoopEdge);
  EXPECT_NE(message.find("line 1"), std::string::npos);
  EXPECT_EQ(parse_error_kind("a b 1\nb a -2\n", &message), ErrorKind::kNegativeMultiplicity);
  EXPECT_NE(message.find("line 2"), std::string::npos);
  EXPECT_EQ(parse_error_kind("a b 0"), ErrorKind::kParseError);
  EXPECT_EQ(parse_error_kind("a b x"), ErrorKind::kParseError);
  EXPECT_EQ(parse_error_kind("a b"), ErrorKind::kParseError);
  EXPECT_EQ(parse_error_kind("a b 1 2"), ErrorKind::kParseError);
  EXPECT_EQ(parse_error_kind("# nothing\n"), ErrorKind::kParseError);
  EXPECT_EQ(parse_error_kind("a #b 1"), ErrorKind::kBadName);
}

TEST(Io, FormatParseRoundTrip) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Multigraph g = random_strongly_connected(2 + seed % 6, 1 + seed % 4, 0.5, seed);
    const Multigraph back = parse_graph(format_graph(g));
    ASSERT_EQ(back, g);
    EXPECT_TRUE(is_strongly_connected(back));
    EXPECT_TRUE(is_loop_free(back));
    EXPECT_EQ(graph_digest(back), graph_digest(g));
  }
  EXPECT_NE(graph_digest(testing::g2()), graph_digest(testing::d2()));
}

TEST(Io, ReportRoundTrip) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    RunReport r;
    r.command = i % 2 ? "exact" : "period";
    r.input_digest = std::to_string(rng());
    r.elapsed_ms = static_cast<double>(rng() % 100000) / 7.0;
    r.limit_exceeded = rng() % 2;
    r.payload = {{"c", rng() % 50}, {"seq", {"a", "b", std::to_string(i)}}, {"nested", {{"x", i}}}};
    EXPECT_EQ(parse_report(emit(r)), r);
  }
}

}  // namespace
}  // namespace chipfire
