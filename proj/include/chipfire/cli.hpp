#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "chipfire/error.hpp"
#include "chipfire/exact.hpp"
#include "chipfire/extension.hpp"
#include "chipfire/game.hpp"
#include "chipfire/heuristics.hpp"
#include "chipfire/io.hpp"
#include "chipfire/multigraph.hpp"
#include "chipfire/period.hpp"
#include "chipfire/report.hpp"

namespace chipfire::cli {

enum ExitCode : int {
  kOk = 0,
  kInvalidInput = 1,
  kLimitExceeded = 2,
  kVerificationFailure = 3,
};

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kCapExceeded:
    case ErrorKind::kLimitExceeded:
      return kLimitExceeded;
    case ErrorKind::kKernelDegenerate:
    case ErrorKind::kVerificationFailed:
      return kVerificationFailure;
    default:
      return kInvalidInput;
  }
}

inline std::uint64_t default_node_budget() {
  if (const char* env = std::getenv("CHIPFIRE_NODE_BUDGET")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw Error(ErrorKind::kInvalidArgument, "CHIPFIRE_NODE_BUDGET is not a number");
    }
  }
  return kDefaultNodeBudget;
}

namespace detail {

inline Multigraph load_graph(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::kInvalidArgument, "cannot open '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  return parse_graph(text);
}

inline nlohmann::json named_counts(const Multigraph& g, const std::vector<Count>& values) {
  nlohmann::json j = nlohmann::json::object();
  for (Vertex v = 0; v < g.size(); ++v) j[g.name(v)] = values[v];
  return j;
}

inline nlohmann::json named_sequence(const Multigraph& g, const PrimitiveSequence& seq) {
  nlohmann::json j = nlohmann::json::array();
  for (Vertex v : seq) j.push_back(g.name(v));
  return j;
}

inline std::string text_counts(const Multigraph& g, const std::vector<Count>& values) {
  std::string out;
  for (Vertex v = 0; v < g.size(); ++v) {
    if (v) out += ' ';
    out += g.name(v) + "=" + std::to_string(values[v]);
  }
  return out;
}

inline std::string text_sequence(const Multigraph& g, const PrimitiveSequence& seq) {
  std::string out;
  for (Vertex v : seq) {
    if (!out.empty()) out += ' ';
    out += g.name(v);
  }
  return out;
}

inline void require_strongly_connected(const Multigraph& g) {
  if (!is_strongly_connected(g)) {
    throw Error(ErrorKind::kNotStronglyConnected, "graph is not strongly connected");
  }
}

// Each command fills the report payload and writes its text form to `text`.

inline void run_info(const Multigraph& g, RunReport& report, std::ostream& text) {
  const auto n = static_cast<std::int64_t>(g.size());
  const auto m = static_cast<std::int64_t>(g.total_edges());
  report.payload = {{"N", n},
                    {"M", m},
                    {"loop_free", is_loop_free(g)},
                    {"strongly_connected", is_strongly_connected(g)},
                    {"eulerian", is_eulerian(g)},
                    {"pigeonhole_bound", m - n + 1}};
  text << "N = " << n << "\nM = " << m << "\nloop-free = " << std::boolalpha << is_loop_free(g)
       << "\nstrongly connected = " << is_strongly_connected(g) << "\neulerian = " << is_eulerian(g)
       << "\npigeonhole bound (M - N + 1) = " << m - n + 1 << "\n";
}

inline void run_period(const Multigraph& g, RunReport& report, std::ostream& text) {
  const PeriodData period = primitive_period_vector(g);
  report.payload = {{"v_G", named_counts(g, period.vector)}, {"P", period.length}};
  text << "v_G: " << text_counts(g, period.vector) << "\nP = " << period.length << "\n";
}

inline void run_exact(const Multigraph& g, Method method, const SearchOptions& opt, RunReport& report,
                      std::ostream& text) {
  require_strongly_connected(g);
  InstabilityResult result;
  switch (method) {
    case Method::kStrategies:
      result = instability_by_strategies(g, opt);
      break;
    case Method::kExtension:
      result = instability_by_extension(g, opt);
      break;
    case Method::kOracle: {
      const OracleResult oracle = instability_oracle(g, std::nullopt, opt.threads);
      result.method = Method::kOracle;
      result.c = oracle.c;
      result.witness = oracle.witness;
      result.degenerate = oracle.degenerate;
      result.nodes = oracle.configurations_checked;
      break;
    }
  }
  if (result.optimal_sequence && !result.degenerate) {
    result.witness = extract_witness(g, *result.optimal_sequence);
  }
  if (result.witness) {
    if (result.witness->total() != result.c || !is_infinite(classify(g, *result.witness))) {
      throw Error(ErrorKind::kVerificationFailed, "witness does not start an infinite game of c chips");
    }
  }

  report.payload = {{"c", result.c},
                    {"method", std::string(to_string(result.method))},
                    {"degenerate", result.degenerate},
                    {"nodes", result.nodes},
                    {"optimal_sequence", nullptr},
                    {"witness", nullptr}};
  text << "method = " << to_string(result.method) << "\n";
  if (result.degenerate) text << "single vertex: no infinite game exists, c = 0 by convention\n";
  if (result.optimal_sequence) {
    report.payload["optimal_sequence"] = named_sequence(g, *result.optimal_sequence);
    text << "optimal sequence: " << text_sequence(g, *result.optimal_sequence) << "\n";
  }
  if (result.witness) {
    report.payload["witness"] = named_counts(g, result.witness->chips());
    text << "witness (verified infinite): " << text_counts(g, result.witness->chips()) << "\n";
  }
  text << "c = " << result.c << "\n";
}

inline void run_bound(const Multigraph& g, Heuristic heuristic, std::size_t passes, RunReport& report,
                      std::ostream& text) {
  require_strongly_connected(g);
  const PeriodData period = primitive_period_vector(g);
  HeuristicReport h = [&] {
    switch (heuristic) {
      case Heuristic::kGreedy: return greedy_sequence(g, period);
      case Heuristic::kSort: return sort_improve(g, PrimitiveSequence::canonical(period), passes);
      case Heuristic::kPageRank: return pagerank_sequence(g, period);
    }
    throw Error(ErrorKind::kInvalidArgument, "unknown heuristic");
  }();
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& [pass, bound] : h.trace) trace.push_back({pass, bound});
  report.payload = {{"heuristic", std::string(to_string(h.heuristic))},
                    {"bound", h.bound},
                    {"sequence", named_sequence(g, h.sequence)},
                    {"trace", trace}};
  text << "heuristic = " << to_string(h.heuristic) << "\nsequence: " << text_sequence(g, h.sequence)
       << "\n";
  for (const auto& [pass, bound] : h.trace) text << "pass " << pass << ": bound " << bound << "\n";
  text << "upper bound = " << h.bound << "\n";
}

inline void run_witness(const Multigraph& g, const SearchOptions& opt, bool check_minimal,
                        RunReport& report, std::ostream& text) {
  require_strongly_connected(g);
  const InstabilityResult result = instability_by_strategies(g, opt);
  const Configuration witness = result.degenerate ? Configuration(g.size())
                                                  : extract_witness(g, *result.optimal_sequence);
  std::optional<bool> minimal;
  if (check_minimal && result.c > 0) {
    const auto smaller = compositions(result.c - 1, g.size());
    minimal = std::none_of(smaller.begin(), smaller.end(),
                           [&](const Configuration& c) { return is_infinite(classify(g, c)); });
    if (!*minimal) {
      throw Error(ErrorKind::kVerificationFailed, "an infinite game exists with fewer chips");
    }
  }
  report.payload = {{"c", result.c},
                    {"sequence", named_sequence(g, *result.optimal_sequence)},
                    {"witness", named_counts(g, witness.chips())},
                    {"infinite", !result.degenerate},
                    {"minimal_checked", minimal.has_value()}};
  text << "sequence: " << text_sequence(g, *result.optimal_sequence) << "\n"
       << "witness: " << text_counts(g, witness.chips()) << "\n"
       << "total = " << witness.total() << (result.degenerate ? "" : ", game is infinite") << "\n";
  if (minimal) text << "every configuration of total " << result.c - 1 << " stabilizes\n";
  text << "c = " << result.c << "\n";
}

}  // namespace detail

/// Runs one command line (without the program name). Reports go to `out`,
/// one-line diagnostics to `err`.
inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Instability minimum of chip-firing games on directed multigraphs", "chipfire"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  unsigned threads = 1;
  app.add_flag("--json", json, "Emit a JSON report");
  app.add_option("--threads", threads, "Worker threads for exact searches")
      ->check(CLI::Range(1u, 1024u));

  std::string file;
  auto* info = app.add_subcommand("info", "Structural summary of a graph");
  info->add_option("FILE", file, "Graph file ('-' for stdin)")->required();
  auto* period = app.add_subcommand("period", "Primitive period vector and period length");
  period->add_option("FILE", file, "Graph file ('-' for stdin)")->required();

  std::string method_name = "strategies";
  std::optional<std::uint64_t> budget_flag;
  auto* exact = app.add_subcommand("exact", "Exact instability minimum");
  exact->add_option("FILE", file, "Graph file ('-' for stdin)")->required();
  exact->add_option("--method", method_name, "strategies | extension | oracle")
      ->check(CLI::IsMember({"strategies", "extension", "oracle"}));
  exact->add_option("--node-budget", budget_flag, "Search budget (default 1e8 or CHIPFIRE_NODE_BUDGET)");

  std::string heuristic_name = "greedy";
  std::size_t passes = 100;
  auto* bound = app.add_subcommand("bound", "Heuristic upper bound");
  bound->add_option("FILE", file, "Graph file ('-' for stdin)")->required();
  bound->add_option("--heuristic", heuristic_name, "greedy | sort | pagerank")
      ->check(CLI::IsMember({"greedy", "sort", "pagerank"}));
  bound->add_option("--passes", passes, "Maximum sort passes");

  bool check_minimal = false;
  auto* witness = app.add_subcommand("witness", "Minimal infinite configuration, verified");
  witness->add_option("FILE", file, "Graph file ('-' for stdin)")->required();
  witness->add_option("--node-budget", budget_flag, "Search budget");
  witness->add_flag("--check-minimal", check_minimal,
                    "Also check that every configuration with c - 1 chips stabilizes");

  std::size_t gen_n = 4;
  Count gen_mult = 2;
  double gen_density = 0.5;
  std::uint64_t gen_seed = 0;
  auto* gen = app.add_subcommand("gen", "Random strongly connected multigraph");
  gen->add_option("--n", gen_n, "Vertex count")->required();
  gen->add_option("--max-mult", gen_mult, "Maximum multiplicity")->required();
  gen->add_option("--density", gen_density, "Extra-arc probability")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--seed", gen_seed, "Seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "chipfire: " << e.what() << "\n";
    return kInvalidInput;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  RunReport report;
  report.command = command;
  std::ostringstream text;
  const auto start = std::chrono::steady_clock::now();
  int code = kOk;
  try {
    SearchOptions opt;
    opt.threads = threads;
    opt.node_budget = budget_flag ? *budget_flag : default_node_budget();
    if (command == "gen") {
      const Multigraph g = random_strongly_connected(gen_n, gen_mult, gen_density, gen_seed);
      report.input_digest = graph_digest(g);
      report.payload = {{"graph", format_graph(g)}};
      text << format_graph(g);
    } else {
      const Multigraph g = detail::load_graph(file);
      report.input_digest = graph_digest(g);
      if (command == "info") {
        detail::run_info(g, report, text);
      } else if (command == "period") {
        detail::run_period(g, report, text);
      } else if (command == "exact") {
        const Method method = method_name == "oracle"      ? Method::kOracle
                              : method_name == "extension" ? Method::kExtension
                                                           : Method::kStrategies;
        detail::run_exact(g, method, opt, report, text);
      } else if (command == "bound") {
        const Heuristic h = heuristic_name == "sort"       ? Heuristic::kSort
                            : heuristic_name == "pagerank" ? Heuristic::kPageRank
                                                           : Heuristic::kGreedy;
        detail::run_bound(g, h, passes, report, text);
      } else {
        detail::run_witness(g, opt, check_minimal, report, text);
      }
    }
  } catch (const Error& e) {
    err << "chipfire: " << e.what() << "\n";
    code = exit_code_for(e.kind());
    report.limit_exceeded = code == kLimitExceeded;
    report.payload = {{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}};
    if (code == kLimitExceeded && command == "exact") {
      err << "chipfire: try 'chipfire bound FILE --heuristic greedy' for an upper bound\n";
    }
  }
  report.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (json) {
    out << emit(report);
  } else if (code == kOk) {
    out << text.str();
  }
  return code;
}

}  // namespace chipfire::cli
