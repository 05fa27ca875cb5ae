#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chipfire/bounds.hpp"
#include "chipfire/error.hpp"
#include "chipfire/multigraph.hpp"
#include "chipfire/period.hpp"

namespace chipfire {

// Upper bounds on the instability minimum: each builder emits a primitive
// sequence, and the gain of any primitive sequence is at least c.

enum class Heuristic { kGreedy, kSort, kPageRank };

constexpr std::string_view to_string(Heuristic h) {
  switch (h) {
    case Heuristic::kGreedy: return "greedy";
    case Heuristic::kSort: return "sort";
    case Heuristic::kPageRank: return "pagerank";
  }
  return "unknown";
}

struct HeuristicReport {
  PrimitiveSequence sequence;
  Count bound = 0;
  Heuristic heuristic = Heuristic::kGreedy;
  std::vector<std::pair<std::size_t, Count>> trace;  // (pass, bound after pass)
};

inline Count evaluate(const Multigraph& g, const PrimitiveSequence& seq) { return gain_of_good(g, seq); }

/// Picks, step by step, the vertex creating the fewest chips in the bound;
/// ties go to the vertex absorbing the most chips, then to the lowest index.
inline HeuristicReport greedy_sequence(const Multigraph& g, const PeriodData& period) {
  const std::size_t n = g.size();
  std::vector<Count> remaining = period.vector;
  std::vector<Vertex> seq;
  seq.reserve(period.length);
  Configuration state(n);
  for (Count step = 0; step < period.length; ++step) {
    Vertex best = n;
    Count best_created = 0;
    Count best_absorbed = 0;
    for (Vertex v = 0; v < n; ++v) {
      if (remaining[v] == 0) continue;
      const Count created = delta_total(g, state, v);
      const Count absorbed = absorbed_total(g, state, v);
      if (best == n || created < best_created ||
          (created == best_created && absorbed > best_absorbed)) {
        best = v;
        best_created = created;
        best_absorbed = absorbed;
      }
    }
    --remaining[best];
    seq.push_back(best);
    bound_step_in_place(g, state, best);
  }
  PrimitiveSequence sequence(period, std::move(seq));
  const Count bound = gain_of_good(g, sequence);
  return {std::move(sequence), bound, Heuristic::kGreedy, {{0, bound}}};
}

/// Remove-and-reinsert local search. Each pass visits every position, moves
/// that element to the insertion point of strictly smallest gain (leftmost
/// on ties) if that beats the current gain. Stops after a pass without
/// improvement or after `max_passes`.
inline HeuristicReport sort_improve(const Multigraph& g, const PrimitiveSequence& start,
                                    std::size_t max_passes) {
  std::vector<Vertex> seq = start.vertices();
  const std::size_t p = seq.size();
  const auto gain = [&](const std::vector<Vertex>& s) {
    Configuration state(g.size());
    for (std::size_t k = 0; k + 1 < s.size(); ++k) bound_step_in_place(g, state, s[k]);
    return state.total();
  };
  Count current = gain(seq);
  HeuristicReport report{start, current, Heuristic::kSort, {{0, current}}};

  // prefix[j]: bound after the first j symbols of `rest`. states[j]: bound
  // after j symbols of the previous candidate. Consecutive candidates only
  // swap `moved` with one symbol, so once their states agree at a common
  // index the remaining steps coincide and the previous gain carries over.
  std::vector<Configuration> prefix(p, Configuration(g.size()));
  std::vector<Configuration> states(p, Configuration(g.size()));
  for (std::size_t pass = 1; pass <= max_passes; ++pass) {
    bool improved = false;
    for (std::size_t pos = 0; pos < p; ++pos) {
      const Vertex moved = seq[pos];
      std::vector<Vertex> rest = seq;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pos));
      for (std::size_t j = 1; j < p; ++j) {
        prefix[j] = prefix[j - 1];
        bound_step_in_place(g, prefix[j], rest[j - 1]);
      }
      Count best = current;
      std::size_t best_at = p;
      Count previous = 0;
      for (std::size_t at = 0; at < p; ++at) {
        Count value = 0;
        if (at + 1 == p) {
          value = prefix[p - 1].total();
        } else {
          Configuration state = prefix[at];
          bound_step_in_place(g, state, moved);
          std::size_t j = at + 1;
          bool joined = false;
          while (true) {
            if (at > 0 && state == states[j]) {
              joined = true;
              break;
            }
            states[j] = state;
            if (j + 1 == p) break;
            bound_step_in_place(g, state, rest[j - 1]);
            ++j;
          }
          value = joined ? previous : state.total();
        }
        previous = value;
        if (value < best) {
          best = value;
          best_at = at;
        }
      }
      if (best_at != p) {
        rest.insert(rest.begin() + static_cast<std::ptrdiff_t>(best_at), moved);
        seq = std::move(rest);
        current = best;
        improved = true;
      }
    }
    report.trace.emplace_back(pass, current);
    if (!improved) break;
  }
  report.sequence = start.reordered(std::move(seq));
  report.bound = current;
  return report;
}

struct PageRankOptions {
  double damping = 0.85;
  double tolerance = 1e-10;
  std::size_t max_iterations = 100;
};

namespace detail {

struct LineGraph {
  std::vector<std::pair<Vertex, Vertex>> arcs;  // distinct arcs, lexicographic
  std::vector<std::vector<std::size_t>> successors;
};

inline LineGraph line_graph(const Multigraph& g) {
  LineGraph lg;
  const std::size_t n = g.size();
  std::vector<std::vector<std::size_t>> arcs_from(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      if (g.edges(u, v) == 0) continue;
      arcs_from[u].push_back(lg.arcs.size());
      lg.arcs.emplace_back(u, v);
    }
  }
  for (const auto& [u, v] : lg.arcs) lg.successors.push_back(arcs_from[v]);
  return lg;
}

/// PageRank restricted to the `active` nodes; dangling mass is spread
/// uniformly over active nodes. Inactive nodes score 0.
inline std::vector<double> pagerank(const LineGraph& lg, const std::vector<bool>& active,
                                    const PageRankOptions& opt) {
  const std::size_t m = lg.arcs.size();
  const auto live = static_cast<double>(std::count(active.begin(), active.end(), true));
  std::vector<double> rank(m, 0.0);
  if (live == 0) return rank;
  for (std::size_t i = 0; i < m; ++i) rank[i] = active[i] ? 1.0 / live : 0.0;
  std::vector<double> next(m);
  for (std::size_t iter = 0; iter < opt.max_iterations; ++iter) {
    double dangling = 0.0;
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      if (!active[i]) continue;
      std::size_t outs = 0;
      for (std::size_t j : lg.successors[i]) outs += active[j] ? 1 : 0;
      if (outs == 0) {
        dangling += rank[i];
        continue;
      }
      const double share = rank[i] / static_cast<double>(outs);
      for (std::size_t j : lg.successors[i]) {
        if (active[j]) next[j] += share;
      }
    }
    const double base = (1.0 - opt.damping + opt.damping * dangling) / live;
    double delta = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!active[i]) continue;
      next[i] = base + opt.damping * next[i];
      delta += std::abs(next[i] - rank[i]);
    }
    rank.swap(next);
    if (delta < opt.tolerance) break;
  }
  return rank;
}

}  // namespace detail

/// PageRank on the line graph with accumulated scores. The selected arc's
/// accumulator resets to zero; an arc leaves the line graph once selected
/// v_G(tail) times. Selection stops when the selected tails cover v_G. The
/// sequence reads tails in reverse selection order, fills leftovers in
/// index order, and gets one sort_improve pass.
inline HeuristicReport pagerank_sequence(const Multigraph& g, const PeriodData& period,
                                         const PageRankOptions& opt = {}) {
  const std::size_t n = g.size();
  const detail::LineGraph lg = detail::line_graph(g);
  const std::size_t m = lg.arcs.size();
  std::vector<bool> active(m, true);
  std::vector<Count> picks(m, 0);
  std::vector<Count> tail_hits(n, 0);
  std::vector<double> accumulated = detail::pagerank(lg, active, opt);
  std::vector<std::size_t> selections;

  const auto covered = [&] {
    for (Vertex v = 0; v < n; ++v) {
      if (tail_hits[v] < period.vector[v]) return false;
    }
    return true;
  };
  while (!covered()) {
    std::size_t best = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (active[i] && (best == m || accumulated[i] > accumulated[best])) best = i;
    }
    if (best == m) break;
    selections.push_back(best);
    accumulated[best] = 0.0;
    const Vertex tail = lg.arcs[best].first;
    ++tail_hits[tail];
    if (++picks[best] >= period.vector[tail]) active[best] = false;
    const std::vector<double> round = detail::pagerank(lg, active, opt);
    for (std::size_t i = 0; i < m; ++i) {
      if (active[i]) accumulated[i] += round[i];
    }
  }

  std::vector<Count> remaining = period.vector;
  std::vector<Vertex> seq;
  for (auto it = selections.rbegin(); it != selections.rend(); ++it) {
    const Vertex tail = lg.arcs[*it].first;
    if (remaining[tail] > 0) {
      --remaining[tail];
      seq.push_back(tail);
    }
  }
  for (Vertex v = 0; v < n; ++v) seq.insert(seq.end(), remaining[v], v);

  PrimitiveSequence raw(period, std::move(seq));
  const Count raw_bound = gain_of_good(g, raw);
  HeuristicReport report = sort_improve(g, raw, 1);
  report.heuristic = Heuristic::kPageRank;
  report.trace = {{0, raw_bound}, {1, report.bound}};
  return report;
}

}  // namespace chipfire
