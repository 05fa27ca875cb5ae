#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "chipfire/bounds.hpp"
#include "chipfire/error.hpp"
#include "chipfire/game.hpp"
#include "chipfire/heuristics.hpp"
#include "chipfire/multigraph.hpp"
#include "chipfire/parallel.hpp"
#include "chipfire/period.hpp"

namespace chipfire {

enum class Method { kStrategies, kExtension, kOracle };

constexpr std::string_view to_string(Method m) {
  switch (m) {
    case Method::kStrategies: return "strategies";
    case Method::kExtension: return "extension";
    case Method::kOracle: return "oracle";
  }
  return "unknown";
}

inline constexpr std::uint64_t kDefaultNodeBudget = 100'000'000;

struct SearchOptions {
  unsigned threads = 1;
  /// Strategies: bound steps. Extension: orderings evaluated.
  std::uint64_t node_budget = kDefaultNodeBudget;
};

struct InstabilityResult {
  Count c = 0;
  Method method = Method::kStrategies;
  std::optional<PrimitiveSequence> optimal_sequence;
  std::optional<Configuration> witness;
  bool degenerate = false;
  std::uint64_t nodes = 0;
  double elapsed_ms = 0.0;
};

/// Number of distinct multiset permutations, P! / prod v_G(i)!, saturating
/// at the largest uint64.
inline std::uint64_t count_primitive_sequences(const PeriodData& period) {
  BigInt total = 1;
  Count placed = 0;
  for (Count k : period.vector) {
    for (Count j = 1; j <= k; ++j) {
      ++placed;
      total = total * placed / j;
    }
  }
  if (total > BigInt(std::numeric_limits<std::uint64_t>::max())) {
    return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(total);
}

namespace detail {

template <typename Visit>
bool for_each_completion(std::vector<Count>& remaining, std::vector<Vertex>& prefix,
                         std::size_t length, Visit& visit) {
  if (prefix.size() == length) return visit(std::span<const Vertex>(prefix));
  for (Vertex v = 0; v < remaining.size(); ++v) {
    if (remaining[v] == 0) continue;
    --remaining[v];
    prefix.push_back(v);
    const bool go_on = for_each_completion(remaining, prefix, length, visit);
    prefix.pop_back();
    ++remaining[v];
    if (!go_on) return false;
  }
  return true;
}

}  // namespace detail

/// Visits every primitive sequence exactly once in lexicographic order,
/// optionally restricted to those starting with `first`. `visit` returns
/// false to stop early.
template <typename Visit>
void for_each_primitive_sequence(const PeriodData& period, Visit&& visit,
                                 std::optional<Vertex> first = std::nullopt) {
  std::vector<Count> remaining = period.vector;
  std::vector<Vertex> prefix;
  prefix.reserve(period.length);
  if (first) {
    if (*first >= remaining.size() || remaining[*first] == 0) return;
    --remaining[*first];
    prefix.push_back(*first);
  }
  detail::for_each_completion(remaining, prefix, period.length, visit);
}

inline std::vector<PrimitiveSequence> enumerate_primitive_sequences(const PeriodData& period) {
  std::vector<PrimitiveSequence> out;
  for_each_primitive_sequence(period, [&](std::span<const Vertex> seq) {
    out.emplace_back(period, std::vector<Vertex>(seq.begin(), seq.end()));
    return true;
  });
  return out;
}

namespace detail {

/// Depth-first branch and bound over primitive sequences starting with
/// `first`. Running totals never decrease, so a prefix whose total already
/// reaches the incumbent cannot lead to a strictly better sequence.
class StrategySearch {
 public:
  StrategySearch(const Multigraph& g, const PeriodData& period, Count incumbent,
                 std::atomic<std::uint64_t>& shared_nodes, std::uint64_t budget)
      : g_(g),
        period_(period),
        incumbent_(incumbent),
        shared_nodes_(shared_nodes),
        budget_(budget),
        remaining_(period.vector),
        states_(period.length, Configuration(g.size())) {}

  void run(Vertex first) {
    if (remaining_[first] == 0) return;
    descend(0, first);
    flush();
  }

  bool aborted() const noexcept { return aborted_; }
  std::uint64_t nodes() const noexcept { return nodes_; }
  std::optional<Count> best_value() const { return best_value_; }
  const std::vector<Vertex>& best_sequence() const noexcept { return best_; }

 private:
  static constexpr std::uint64_t kFlushEvery = 1 << 14;

  // Applies `v` as step `depth` and explores below it.
  void descend(std::size_t depth, Vertex v) {
    const std::size_t last = period_.length - 1;
    --remaining_[v];
    prefix_.push_back(v);
    if (depth + 1 <= last) {
      states_[depth + 1] = states_[depth];
      bound_step_in_place(g_, states_[depth + 1], v);
      if (++nodes_ % kFlushEvery == 0) flush();
    }
    const Count total = depth + 1 <= last ? states_[depth + 1].total() : states_[last].total();
    if (!aborted_ && total < incumbent_) {
      if (depth + 1 == period_.length) {
        incumbent_ = total;
        best_value_ = total;
        best_ = prefix_;
      } else {
        for (Vertex w = 0; w < remaining_.size() && !aborted_; ++w) {
          if (remaining_[w] > 0) descend(depth + 1, w);
        }
      }
    }
    prefix_.pop_back();
    ++remaining_[v];
  }

  void flush() {
    const std::uint64_t pending = nodes_ - flushed_;
    flushed_ = nodes_;
    if (shared_nodes_.fetch_add(pending) + pending > budget_) aborted_ = true;
  }

  const Multigraph& g_;
  const PeriodData& period_;
  Count incumbent_;
  std::atomic<std::uint64_t>& shared_nodes_;
  std::uint64_t budget_;
  std::vector<Count> remaining_;
  std::vector<Configuration> states_;
  std::vector<Vertex> prefix_;
  std::vector<Vertex> best_;
  std::optional<Count> best_value_;
  std::uint64_t nodes_ = 0;
  std::uint64_t flushed_ = 0;
  bool aborted_ = false;
};

}  // namespace detail

/// Minimum over all primitive sequences of the total of B(P-1), with the
/// lexicographically smallest optimal sequence. The tree is split by first
/// symbol; each subtree starts from the same greedy upper bound, so node
/// counts do not depend on the thread count.
inline InstabilityResult instability_by_strategies(const Multigraph& g, const SearchOptions& opt = {}) {
  const auto start = std::chrono::steady_clock::now();
  const PeriodData period = primitive_period_vector(g);
  InstabilityResult result;
  result.method = Method::kStrategies;
  result.degenerate = g.size() == 1;

  const HeuristicReport greedy = greedy_sequence(g, period);
  const Count upper = greedy.bound + 1;

  const std::size_t n = g.size();
  std::atomic<std::uint64_t> shared_nodes{0};
  std::vector<std::optional<Count>> values(n);
  std::vector<std::vector<Vertex>> sequences(n);
  std::vector<std::uint64_t> nodes(n, 0);
  std::atomic<bool> aborted{false};
  parallel_for(n, opt.threads, [&](std::size_t first) {
    detail::StrategySearch search(g, period, upper, shared_nodes, opt.node_budget);
    search.run(first);
    if (search.aborted()) aborted = true;
    values[first] = search.best_value();
    sequences[first] = search.best_sequence();
    nodes[first] = search.nodes();
  });
  if (aborted) {
    throw Error(ErrorKind::kLimitExceeded,
                "strategy search exceeded the node budget of " + std::to_string(opt.node_budget));
  }

  std::optional<std::size_t> winner;
  for (std::size_t v = 0; v < n; ++v) {
    result.nodes += nodes[v];
    if (values[v] && (!winner || *values[v] < *values[*winner])) winner = v;
  }
  if (!winner) {
    throw Error(ErrorKind::kVerificationFailed, "search found nothing below the greedy bound");
  }
  result.c = *values[*winner];
  result.optimal_sequence = PrimitiveSequence(period, sequences[*winner]);
  result.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

/// Runs the good strategy of `seq` until a bound state at step >= P-1
/// recurs; that state starts an infinite legal game whose total is the
/// gain of `seq`. Verified through the game engine.
inline Configuration extract_witness(const Multigraph& g, const PrimitiveSequence& seq,
                                     std::size_t max_steps = 10'000'000) {
  const std::size_t p = seq.size();
  const Count gain = gain_of_good(g, seq);
  std::unordered_map<Configuration, std::size_t, ConfigurationHash> seen;
  Configuration state(g.size());
  std::optional<Configuration> found;
  for (std::size_t step = 0; step <= max_steps; ++step) {
    if (step + 1 >= p && !seen.emplace(state, step).second) {
      found = state;
      break;
    }
    bound_step_in_place(g, state, seq[step % p]);
  }
  if (!found) {
    throw Error(ErrorKind::kVerificationFailed, "bound states did not recur");
  }
  if (found->total() != gain) {
    throw Error(ErrorKind::kVerificationFailed, "witness total differs from the gain");
  }
  if (g.size() > 1 && !is_infinite(classify(g, *found))) {
    throw Error(ErrorKind::kVerificationFailed, "witness configuration stabilizes");
  }
  return *found;
}

/// Minimum number of edges (with multiplicity) whose removal leaves the
/// graph acyclic: M minus the best count of edges pointing forward in some
/// vertex ordering, via dynamic programming over vertex subsets.
inline Count feedback_number(const Multigraph& g) {
  const std::size_t n = g.size();
  if (n > 24) throw Error(ErrorKind::kInvalidArgument, "feedback number limited to 24 vertices");
  const std::size_t full = std::size_t{1} << n;
  std::vector<Count> best(full, 0);
  for (std::size_t set = 1; set < full; ++set) {
    for (Vertex last = 0; last < n; ++last) {
      if (!(set >> last & 1)) continue;
      const std::size_t before = set & ~(std::size_t{1} << last);
      Count into = 0;
      for (Vertex u = 0; u < n; ++u) {
        if (before >> u & 1) into += g.edges(u, last);
      }
      best[set] = std::max(best[set], best[before] + into);
    }
  }
  return g.total_edges() - best[full - 1];
}

}  // namespace chipfire
