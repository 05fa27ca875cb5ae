#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "chipfire/error.hpp"
#include "chipfire/game.hpp"
#include "chipfire/multigraph.hpp"
#include "chipfire/period.hpp"

namespace chipfire {

/// A length-P vertex sequence in which vertex i occurs exactly v_G(i) times.
/// Repeated periodically it is a good strategy.
class PrimitiveSequence {
 public:
  PrimitiveSequence(const PeriodData& period, std::vector<Vertex> seq) : seq_(std::move(seq)) {
    if (!satisfies(period, seq_)) {
      throw Error(ErrorKind::kNotPrimitive, "sequence multiplicities differ from the period vector");
    }
  }

  static bool satisfies(const PeriodData& period, std::span<const Vertex> seq) {
    if (seq.size() != period.length) return false;
    std::vector<Count> seen(period.vector.size(), 0);
    for (Vertex v : seq) {
      if (v >= seen.size()) return false;
      ++seen[v];
    }
    return seen == period.vector;
  }

  /// Vertex 0 repeated v_G(0) times, then vertex 1, and so on.
  static PrimitiveSequence canonical(const PeriodData& period) {
    std::vector<Vertex> seq;
    for (Vertex v = 0; v < period.vector.size(); ++v) seq.insert(seq.end(), period.vector[v], v);
    return PrimitiveSequence(period, std::move(seq));
  }

  /// Same multiset of vertices in a different order.
  PrimitiveSequence reordered(std::vector<Vertex> seq) const {
    std::vector<Vertex> a = seq_;
    std::vector<Vertex> b = seq;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw Error(ErrorKind::kNotPrimitive, "reordering changes the multiset");
    PrimitiveSequence out = *this;
    out.seq_ = std::move(seq);
    return out;
  }

  std::size_t size() const noexcept { return seq_.size(); }
  Vertex operator[](std::size_t i) const { return seq_[i]; }
  const std::vector<Vertex>& vertices() const noexcept { return seq_; }
  auto begin() const noexcept { return seq_.begin(); }
  auto end() const noexcept { return seq_.end(); }

  friend bool operator==(const PrimitiveSequence&, const PrimitiveSequence&) = default;
  friend auto operator<=>(const PrimitiveSequence& a, const PrimitiveSequence& b) {
    return a.seq_ <=> b.seq_;
  }

 private:
  std::vector<Vertex> seq_;
};

/// One step of the backwards dynamical bound: the chosen vertex gains d+(v),
/// every other vertex w drops by E(v, w), floored at zero.
inline void bound_step_in_place(const Multigraph& g, Configuration& bound, Vertex v) {
  for (Vertex w = 0; w < g.size(); ++w) {
    if (w == v) continue;
    const Count e = g.edges(v, w);
    bound[w] = bound[w] > e ? bound[w] - e : 0;
  }
  bound[v] += g.out_degree(v);
}

inline Configuration bound_step(const Multigraph& g, const Configuration& bound, Vertex v) {
  Configuration next = bound;
  bound_step_in_place(g, next, v);
  return next;
}

/// Chips created by stepping v from `bound`: sum over w of max(0, E(v,w) - B(w)).
inline Count delta_total(const Multigraph& g, const Configuration& bound, Vertex v) {
  Count created = 0;
  for (Vertex w = 0; w < g.size(); ++w) {
    const Count e = g.edges(v, w);
    if (e > bound[w]) created += e - bound[w];
  }
  return created;
}

/// Chips the step absorbs from the current bound: sum over w != v of min(B(w), E(v,w)).
inline Count absorbed_total(const Multigraph& g, const Configuration& bound, Vertex v) {
  Count absorbed = 0;
  for (Vertex w = 0; w < g.size(); ++w) {
    if (w != v) absorbed += std::min(bound[w], g.edges(v, w));
  }
  return absorbed;
}

struct BoundTrace {
  std::vector<Configuration> states;  // states[k] = B(k)
  std::vector<Count> totals;          // totals[k] = sum of B(k)
};

inline BoundTrace run_bound(const Multigraph& g, std::span<const Vertex> prefix) {
  BoundTrace trace;
  trace.states.reserve(prefix.size() + 1);
  trace.totals.reserve(prefix.size() + 1);
  Configuration state(g.size());
  trace.states.push_back(state);
  trace.totals.push_back(0);
  for (Vertex v : prefix) {
    bound_step_in_place(g, state, v);
    trace.states.push_back(state);
    trace.totals.push_back(state.total());
  }
  return trace;
}

/// Totals of the periodic strategy built from `seq`, for steps 0..horizon.
inline std::vector<Count> periodic_totals(const Multigraph& g, std::span<const Vertex> seq,
                                          std::size_t horizon) {
  std::vector<Count> totals{0};
  Configuration state(g.size());
  for (std::size_t k = 0; k < horizon; ++k) {
    bound_step_in_place(g, state, seq[k % seq.size()]);
    totals.push_back(state.total());
  }
  return totals;
}

/// Gain of the good strategy: the total of B(P-1), which is where the
/// periodic bound stops growing.
inline Count gain_of_good(const Multigraph& g, const PrimitiveSequence& seq) {
  Configuration state(g.size());
  for (std::size_t k = 0; k + 1 < seq.size(); ++k) bound_step_in_place(g, state, seq[k]);
  return state.total();
}

inline Count gain_of_good(const Multigraph& g, const PeriodData& period, std::span<const Vertex> seq) {
  return gain_of_good(g, PrimitiveSequence(period, {seq.begin(), seq.end()}));
}

/// Both sides of the window identity
///   B(n+r)(v) = B(n)(v) + k d+(v) - sum over other steps j of min(B(n+j)(v), E(g(n+j), v)),
/// with k the number of times v is chosen in the window [n, n+r).
inline bool check_evol_identity(const Multigraph& g, std::span<const Vertex> prefix, std::size_t n,
                                std::size_t r, Vertex v) {
  if (n + r > prefix.size() || v >= g.size()) {
    throw Error(ErrorKind::kInvalidArgument, "window exceeds prefix");
  }
  const BoundTrace trace = run_bound(g, prefix.first(n + r));
  const Count lhs = trace.states[n + r][v];
  Count k = 0;
  Count lost = 0;
  for (std::size_t j = 0; j < r; ++j) {
    const Vertex chosen = prefix[n + j];
    if (chosen == v) {
      ++k;
    } else {
      lost += std::min(trace.states[n + j][v], g.edges(chosen, v));
    }
  }
  return lhs + lost == trace.states[n][v] + k * g.out_degree(v);
}

}  // namespace chipfire
