#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chipfire/bounds.hpp"
#include "chipfire/error.hpp"
#include "chipfire/exact.hpp"
#include "chipfire/heuristics.hpp"
#include "chipfire/maxflow.hpp"
#include "chipfire/multigraph.hpp"
#include "chipfire/parallel.hpp"
#include "chipfire/period.hpp"

namespace chipfire {

/// v_G(i) copies of every vertex i. Copies are numbered base-major: copy
/// (i, j) for j in [1, v_G(i)] has index first_copy[i] + j - 1.
struct PrimitiveExtension {
  struct Copy {
    Vertex base = 0;
    Count index = 1;  // 1-based among copies of `base`
  };

  std::vector<Copy> copies;
  std::vector<std::size_t> first_copy;
  std::vector<Count> edges;  // P x P, row-major

  std::size_t size() const noexcept { return copies.size(); }
  Vertex project(std::size_t copy) const { return copies[copy].base; }
  Count edge(std::size_t from, std::size_t to) const { return edges[from * size() + to]; }
};

inline PrimitiveExtension primitive_extension(const Multigraph& g, const PeriodData& period) {
  if (period.vector.size() != g.size()) {
    throw Error(ErrorKind::kInvalidArgument, "period vector size differs from vertex count");
  }
  PrimitiveExtension ext;
  for (Vertex i = 0; i < g.size(); ++i) {
    ext.first_copy.push_back(ext.copies.size());
    for (Count j = 1; j <= period.vector[i]; ++j) ext.copies.push_back({i, j});
  }
  const std::size_t p = ext.size();
  ext.edges.assign(p * p, 0);
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = 0; b < p; ++b) {
      ext.edges[a * p + b] = g.edges(ext.copies[a].base, ext.copies[b].base);
    }
  }
  return ext;
}

/// Copy ordering for a base-label sequence: the k-th occurrence of vertex i
/// takes copy (i, k).
inline std::vector<std::size_t> copies_for_sequence(const PrimitiveExtension& ext,
                                                    std::span<const Vertex> seq) {
  std::vector<std::size_t> used(ext.first_copy.size(), 0);
  std::vector<std::size_t> ordering;
  ordering.reserve(seq.size());
  for (Vertex v : seq) ordering.push_back(ext.first_copy[v] + used[v]++);
  return ordering;
}

struct ConstrainedSubgraphResult {
  Count kept = 0;
  std::vector<std::size_t> ordering;  // copy indices, position 0 first
  std::vector<Count> kept_edges;      // P x P, by copy index
};

namespace detail {

inline void check_ordering(const PrimitiveExtension& ext, std::span<const std::size_t> ordering) {
  std::vector<bool> seen(ext.size(), false);
  if (ordering.size() != ext.size()) {
    throw Error(ErrorKind::kInvalidArgument, "ordering must list every copy once");
  }
  for (std::size_t c : ordering) {
    if (c >= ext.size() || seen[c]) {
      throw Error(ErrorKind::kInvalidArgument, "ordering must list every copy once");
    }
    seen[c] = true;
  }
}

}  // namespace detail

/// Maximum kept multiplicity when only edges from a later copy to an
/// earlier one are allowed, under three caps: per source copy and target
/// class v at most E(base(source), v); per target copy an in-degree of at
/// most d+(base(target)); per pair at most the extension multiplicity.
/// Solved as a transportation max-flow: source -> (position, class) ->
/// target position -> sink.
inline ConstrainedSubgraphResult solve_ordering(const Multigraph& g, const PrimitiveExtension& ext,
                                                std::span<const std::size_t> ordering,
                                                bool want_edges = true) {
  detail::check_ordering(ext, ordering);
  const std::size_t p = ext.size();
  const std::size_t n = g.size();
  FlowNetwork net(2 + p);
  const std::size_t source = 0;
  const std::size_t sink = 1;
  const auto position_node = [](std::size_t j) { return 2 + j; };
  for (std::size_t j = 0; j < p; ++j) {
    const Count cap = g.out_degree(ext.project(ordering[j]));
    if (cap > 0) net.add_edge(position_node(j), sink, cap);
  }

  struct Link {
    std::size_t edge;
    std::size_t from;
    std::size_t to;
  };
  std::vector<Link> links;
  for (std::size_t m = 1; m < p; ++m) {
    const Vertex from_base = ext.project(ordering[m]);
    for (Vertex v = 0; v < n; ++v) {
      const Count class_cap = g.edges(from_base, v);
      if (class_cap == 0) continue;
      std::optional<std::size_t> class_node;
      for (std::size_t j = 0; j < m; ++j) {
        if (ext.project(ordering[j]) != v) continue;
        if (!class_node) {
          class_node = net.add_node();
          net.add_edge(source, *class_node, class_cap);
        }
        const std::size_t id =
            net.add_edge(*class_node, position_node(j), ext.edge(ordering[m], ordering[j]));
        links.push_back({id, ordering[m], ordering[j]});
      }
    }
  }

  ConstrainedSubgraphResult out;
  out.kept = net.max_flow(source, sink);
  out.ordering.assign(ordering.begin(), ordering.end());
  if (want_edges) {
    out.kept_edges.assign(p * p, 0);
    for (const Link& link : links) out.kept_edges[link.from * p + link.to] += net.flow(link.edge);
  }
  return out;
}

inline Count ordering_max_kept(const Multigraph& g, const PrimitiveExtension& ext,
                               std::span<const std::size_t> ordering) {
  return solve_ordering(g, ext, ordering, false).kept;
}

/// Independent re-check of a kept subgraph: acyclic (Kahn), both cap
/// families, per-pair caps, and that the edge count equals `kept`.
inline bool validate_constrained(const Multigraph& g, const PrimitiveExtension& ext,
                                 const ConstrainedSubgraphResult& r) {
  const std::size_t p = ext.size();
  if (r.kept_edges.size() != p * p) return false;
  Count sum = 0;
  std::vector<Count> indegree(p, 0);
  for (std::size_t a = 0; a < p; ++a) {
    std::vector<Count> per_class(g.size(), 0);
    for (std::size_t b = 0; b < p; ++b) {
      const Count x = r.kept_edges[a * p + b];
      if (x > ext.edge(a, b)) return false;
      per_class[ext.project(b)] += x;
      indegree[b] += x;
      sum += x;
    }
    for (Vertex v = 0; v < g.size(); ++v) {
      if (per_class[v] > g.edges(ext.project(a), v)) return false;
    }
  }
  for (std::size_t b = 0; b < p; ++b) {
    if (indegree[b] > g.out_degree(ext.project(b))) return false;
  }
  if (sum != r.kept) return false;

  std::vector<std::size_t> pending(p, 0);
  for (std::size_t a = 0; a < p; ++a) {
    for (std::size_t b = 0; b < p; ++b) pending[b] += r.kept_edges[a * p + b] > 0 ? 1 : 0;
  }
  std::vector<std::size_t> ready;
  for (std::size_t b = 0; b < p; ++b) {
    if (pending[b] == 0) ready.push_back(b);
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    const std::size_t a = ready.back();
    ready.pop_back();
    ++removed;
    for (std::size_t b = 0; b < p; ++b) {
      if (r.kept_edges[a * p + b] > 0 && --pending[b] == 0) ready.push_back(b);
    }
  }
  return removed == p;
}

/// Same value as ordering_max_kept without a flow network. The caps split
/// by target class: class v only receives edges from the (position, v)
/// demands, and a demand may use any earlier copy of v. Earlier demands see
/// a subset of what later ones see, so serving demands left to right, each
/// as fully as the spare in-capacity allows, is optimal per class.
inline Count ordering_kept_by_classes(const Multigraph& g, const PrimitiveExtension& ext,
                                      std::span<const std::size_t> ordering) {
  detail::check_ordering(ext, ordering);
  std::vector<Count> spare(g.size(), 0);
  Count kept = 0;
  for (std::size_t copy : ordering) {
    const Vertex u = ext.project(copy);
    for (Vertex v = 0; v < g.size(); ++v) {
      const Count take = std::min(g.edges(u, v), spare[v]);
      spare[v] -= take;
      kept += take;
    }
    spare[u] += g.out_degree(u);
  }
  return kept;
}

struct ExtensionSolution {
  ConstrainedSubgraphResult subgraph;
  PrimitiveSequence sequence;  // base labels of the maximizing ordering
  std::uint64_t orderings = 0;  // search nodes visited
};

namespace detail {

/// Depth-first search over orderings starting with copies of `first`,
/// placing copies of one base vertex in index order. A position of base u
/// keeps at most d+(u) edges, so the edges already lost bound what the
/// prefix can still reach.
class ExtensionSearch {
 public:
  ExtensionSearch(const Multigraph& g, const PeriodData& period, Count need,
                  std::atomic<std::uint64_t>& shared_nodes, std::uint64_t budget)
      : g_(g),
        remaining_(period.vector),
        length_(period.length),
        need_(need),
        shared_nodes_(shared_nodes),
        budget_(budget),
        spare_(period.length + 1, std::vector<Count>(g.size(), 0)) {
    for (Vertex v = 0; v < g.size(); ++v) weighted_ += g.out_degree(v) * period.vector[v];
  }

  void run(Vertex first) {
    if (remaining_[first] == 0) return;
    place(0, first, 0);
    flush();
  }

  bool aborted() const noexcept { return aborted_; }
  std::uint64_t nodes() const noexcept { return nodes_; }
  std::optional<Count> best_kept() const { return found_; }
  const std::vector<Vertex>& best_sequence() const noexcept { return best_; }

 private:
  static constexpr std::uint64_t kFlushEvery = 1 << 14;

  void place(std::size_t depth, Vertex u, Count lost) {
    if (++nodes_ % kFlushEvery == 0) flush();
    if (aborted_) return;
    std::vector<Count>& spare = spare_[depth + 1];
    spare = spare_[depth];
    Count kept_here = 0;
    for (Vertex v = 0; v < g_.size(); ++v) {
      const Count take = std::min(g_.edges(u, v), spare[v]);
      spare[v] -= take;
      kept_here += take;
    }
    spare[u] += g_.out_degree(u);
    lost += g_.out_degree(u) - kept_here;
    if (weighted_ - lost < need_) return;

    --remaining_[u];
    prefix_.push_back(u);
    if (depth + 1 == length_) {
      found_ = weighted_ - lost;
      need_ = *found_ + 1;
      best_ = prefix_;
    } else {
      for (Vertex w = 0; w < remaining_.size() && !aborted_; ++w) {
        if (remaining_[w] > 0) place(depth + 1, w, lost);
      }
    }
    prefix_.pop_back();
    ++remaining_[u];
  }

  void flush() {
    const std::uint64_t pending = nodes_ - flushed_;
    flushed_ = nodes_;
    if (shared_nodes_.fetch_add(pending) + pending > budget_) aborted_ = true;
  }

  const Multigraph& g_;
  std::vector<Count> remaining_;
  std::size_t length_;
  Count weighted_ = 0;
  Count need_;  // smallest kept count still worth reporting
  std::atomic<std::uint64_t>& shared_nodes_;
  std::uint64_t budget_;
  std::vector<std::vector<Count>> spare_;
  std::vector<Vertex> prefix_;
  std::vector<Vertex> best_;
  std::optional<Count> found_;
  std::uint64_t nodes_ = 0;
  std::uint64_t flushed_ = 0;
  bool aborted_ = false;
};

}  // namespace detail

/// Maximizes the kept edge count over every ordering of the extension.
/// Copies of one base vertex are interchangeable, so orderings range over
/// primitive sequences. Ties keep the lexicographically smallest sequence.
/// The greedy heuristic's ordering, solved by max-flow, seeds the search;
/// the winning ordering is re-solved by max-flow and must agree.
inline ExtensionSolution max_constrained_acyclic(const Multigraph& g, const PeriodData& period,
                                                 const PrimitiveExtension& ext,
                                                 const SearchOptions& opt = {}) {
  const PrimitiveSequence seed = greedy_sequence(g, period).sequence;
  const Count seed_kept = ordering_max_kept(g, ext, copies_for_sequence(ext, seed.vertices()));
  // Anything reaching the seed value is explored, so the lexicographic
  // tie-break holds and every subtree starts from the same threshold.

  const std::size_t n = g.size();
  std::atomic<std::uint64_t> shared_nodes{0};
  std::vector<std::optional<Count>> best(n);
  std::vector<std::vector<Vertex>> best_seq(n);
  std::vector<std::uint64_t> visited(n, 0);
  std::atomic<bool> aborted{false};
  parallel_for(n, opt.threads, [&](std::size_t first) {
    detail::ExtensionSearch search(g, period, seed_kept, shared_nodes, opt.node_budget);
    search.run(first);
    if (search.aborted()) aborted = true;
    best[first] = search.best_kept();
    best_seq[first] = search.best_sequence();
    visited[first] = search.nodes();
  });
  if (aborted) {
    throw Error(ErrorKind::kLimitExceeded,
                "extension search exceeded the node budget of " + std::to_string(opt.node_budget));
  }

  std::optional<std::size_t> winner;
  std::uint64_t orderings = 0;
  for (std::size_t v = 0; v < n; ++v) {
    orderings += visited[v];
    if (best[v] && (!winner || *best[v] > *best[*winner])) winner = v;
  }
  std::vector<Vertex> chosen = winner ? best_seq[*winner] : seed.vertices();
  const Count searched = winner ? *best[*winner] : seed_kept;
  PrimitiveSequence sequence(period, chosen);
  ConstrainedSubgraphResult sub = solve_ordering(g, ext, copies_for_sequence(ext, chosen));
  if (sub.kept != searched || !validate_constrained(g, ext, sub)) {
    throw Error(ErrorKind::kVerificationFailed, "max-flow disagrees with the extension search");
  }
  return {std::move(sub), std::move(sequence), orderings};
}

/// c = sum_i d+(v_i) v_G(i) - a, with a the constrained acyclic maximum.
inline InstabilityResult instability_by_extension(const Multigraph& g, const SearchOptions& opt = {}) {
  const auto start = std::chrono::steady_clock::now();
  const PeriodData period = primitive_period_vector(g);
  const PrimitiveExtension ext = primitive_extension(g, period);
  const ExtensionSolution best = max_constrained_acyclic(g, period, ext, opt);

  Count weighted = 0;
  for (Vertex v = 0; v < g.size(); ++v) weighted += g.out_degree(v) * period.vector[v];

  InstabilityResult result;
  result.method = Method::kExtension;
  result.degenerate = g.size() == 1;
  result.c = weighted - best.subgraph.kept;
  result.nodes = best.orderings;
  // The maximizing ordering, read as a primitive sequence, attains c.
  if (gain_of_good(g, best.sequence) != result.c) {
    throw Error(ErrorKind::kVerificationFailed, "maximizing ordering does not attain the formula");
  }
  result.optimal_sequence = best.sequence;
  result.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace chipfire
