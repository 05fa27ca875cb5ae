#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "chipfire/cli.hpp"

namespace chipfire {
namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("chipfire_cli_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir_);
    write("g2.txt", "a b 2\nb a 1\n");
    write("c3.txt", "# c3\na b 1\nb c 1\nc a 1\n");
    write("loop.txt", "a a 1\n");
    write("path.txt", "a b 1\n");
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  void write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

TEST_F(CliTest, ExactReportsC) {
  const CliRun r = run({"exact", path("g2.txt"), "--method", "strategies"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(ends_with(r.out, "c = 2\n")) << r.out;
  EXPECT_TRUE(ends_with(run({"exact", path("c3.txt"), "--method", "extension"}).out, "c = 1\n"));
  EXPECT_TRUE(ends_with(run({"exact", path("c3.txt"), "--method", "oracle"}).out, "c = 1\n"));
}

TEST_F(CliTest, PeriodJson) {
  const CliRun r = run({"period", path("g2.txt"), "--json"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["v_G"]["a"], 1);
  EXPECT_EQ(j["v_G"]["b"], 2);
  EXPECT_EQ(j["P"], 3);
  EXPECT_EQ(j["command"], "period");
  EXPECT_FALSE(j["limit_exceeded"].get<bool>());
}

TEST_F(CliTest, GlobalFlagsBeforeSubcommand) {
  const CliRun r = run({"--json", "--threads", "2", "info", path("g2.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["N"], 2);
  EXPECT_EQ(j["M"], 3);
  EXPECT_EQ(j["pigeonhole_bound"], 2);
  EXPECT_FALSE(j["eulerian"].get<bool>());
}

TEST_F(CliTest, ExitCodes) {
  const CliRun loop = run({"info", path("loop.txt")});
  EXPECT_EQ(loop.code, 1);
  EXPECT_NE(loop.err.find("LoopEdge"), std::string::npos);
  EXPECT_EQ(run({"exact", path("path.txt")}).code, 1);
  EXPECT_EQ(run({"exact", path("missing.txt")}).code, 1);
  EXPECT_EQ(run({"exact", path("g2.txt"), "--method", "nope"}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);

  const CliRun limited = run({"exact", path("g2.txt"), "--node-budget", "0", "--json"});
  EXPECT_EQ(limited.code, 2);
  EXPECT_TRUE(nlohmann::json::parse(limited.out)["limit_exceeded"].get<bool>());
}

TEST_F(CliTest, EnvironmentBudget) {
  ::setenv("CHIPFIRE_NODE_BUDGET", "0", 1);
  const CliRun limited = run({"exact", path("g2.txt")});
  ::unsetenv("CHIPFIRE_NODE_BUDGET");
  EXPECT_EQ(limited.code, 2);
  EXPECT_EQ(run({"exact", path("g2.txt")}).code, 0);
}

TEST_F(CliTest, BoundAndWitness) {
  const CliRun greedy = run({"bound", path("g2.txt"), "--heuristic", "greedy"});
  EXPECT_TRUE(ends_with(greedy.out, "upper bound = 2\n")) << greedy.out;
  const CliRun sort = run({"bound", path("c3.txt"), "--heuristic", "sort", "--passes", "3", "--json"});
  EXPECT_EQ(nlohmann::json::parse(sort.out)["bound"], 1);
  const CliRun pr = run({"bound", path("c3.txt"), "--heuristic", "pagerank"});
  EXPECT_EQ(pr.code, 0);

  const CliRun w = run({"witness", path("g2.txt"), "--check-minimal", "--json"});
  ASSERT_EQ(w.code, 0) << w.err;
  const auto j = nlohmann::json::parse(w.out);
  EXPECT_EQ(j["c"], 2);
  EXPECT_EQ(j["witness"]["a"].get<int>() + j["witness"]["b"].get<int>(), 2);
  EXPECT_TRUE(j["minimal_checked"].get<bool>());
}

TEST_F(CliTest, GenOutputReparses) {
  const CliRun r = run({"gen", "--n", "5", "--max-mult", "2", "--density", "0.3", "--seed", "4"});
  ASSERT_EQ(r.code, 0);
  const Multigraph g = parse_graph(r.out);
  EXPECT_EQ(g.size(), 5u);
  EXPECT_TRUE(is_strongly_connected(g));
  EXPECT_EQ(g, random_strongly_connected(5, 2, 0.3, 4));
}

}  // namespace
}  // namespace chipfire
