#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <unordered_map>
#include <variant>
#include <vector>

#include <boost/container_hash/hash.hpp>

#include "chipfire/error.hpp"
#include "chipfire/multigraph.hpp"
#include "chipfire/parallel.hpp"

namespace chipfire {

/// Chip counts per vertex.
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(std::size_t n) : chips_(n, 0) {}
  explicit Configuration(std::vector<Count> chips) : chips_(std::move(chips)) {}
  Configuration(std::initializer_list<Count> chips) : chips_(chips) {}

  std::size_t size() const noexcept { return chips_.size(); }
  Count& operator[](Vertex v) { return chips_[v]; }
  Count operator[](Vertex v) const { return chips_[v]; }
  Count total() const noexcept { return std::accumulate(chips_.begin(), chips_.end(), Count{0}); }
  const std::vector<Count>& chips() const noexcept { return chips_; }

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration&, const Configuration&) = default;

 private:
  std::vector<Count> chips_;
};

struct ConfigurationHash {
  std::size_t operator()(const Configuration& c) const noexcept {
    return boost::hash_range(c.chips().begin(), c.chips().end());
  }
};

/// The game reached a configuration where nothing can fire.
struct FiniteGame {
  Configuration final;
  Count steps = 0;
  std::vector<Count> firings;
};

/// The configuration first seen at step `entry` recurs `cycle_length` steps later.
struct InfiniteGame {
  Count entry = 0;
  Count cycle_length = 0;
};

using GameOutcome = std::variant<FiniteGame, InfiniteGame>;

inline bool is_infinite(const GameOutcome& outcome) {
  return std::holds_alternative<InfiniteGame>(outcome);
}

/// Threshold is c(v) >= d+(v); a vertex with no out-edges never fires.
inline bool can_fire(const Multigraph& g, const Configuration& c, Vertex v) {
  const Count d = g.out_degree(v);
  return d >= 1 && c[v] >= d;
}

inline Configuration fire(const Multigraph& g, const Configuration& c, Vertex v) {
  if (v >= g.size() || c.size() != g.size() || !can_fire(g, c, v)) {
    throw Error(ErrorKind::kIllegalFire, "vertex " + std::to_string(v) + " cannot fire");
  }
  Configuration next = c;
  next[v] -= g.out_degree(v);
  for (Vertex w = 0; w < g.size(); ++w) next[w] += g.edges(v, w);
  return next;
}

/// Simulates the legal game in which `choose` picks among the currently
/// fireable vertices (given in increasing order). Any legal game decides the
/// finite/infinite verdict for the whole initial configuration.
template <typename Chooser>
GameOutcome classify_with(const Multigraph& g, const Configuration& c0, Chooser&& choose) {
  const std::size_t n = g.size();
  std::unordered_map<Configuration, Count, ConfigurationHash> seen;
  std::vector<Count> firings(n, 0);
  std::vector<Vertex> fireable;
  Configuration current = c0;
  for (Count step = 0;; ++step) {
    auto [it, inserted] = seen.emplace(current, step);
    if (!inserted) return InfiniteGame{it->second, step - it->second};
    fireable.clear();
    for (Vertex v = 0; v < n; ++v) {
      if (can_fire(g, current, v)) fireable.push_back(v);
    }
    if (fireable.empty()) return FiniteGame{current, step, firings};
    const Vertex v = choose(std::span<const Vertex>(fireable));
    ++firings[v];
    current[v] -= g.out_degree(v);
    for (Vertex w = 0; w < n; ++w) current[w] += g.edges(v, w);
  }
}

/// Deterministic policy: always fire the lowest-index fireable vertex.
inline GameOutcome classify(const Multigraph& g, const Configuration& c0) {
  return classify_with(g, c0, [](std::span<const Vertex> f) { return f.front(); });
}

/// Every composition of `total` into `parts` non-negative parts, in
/// lexicographically increasing order.
inline std::vector<Configuration> compositions(Count total, std::size_t parts) {
  std::vector<Configuration> out;
  Configuration c(parts);
  std::function<void(std::size_t, Count)> rec = [&](std::size_t i, Count left) {
    if (i + 1 == parts) {
      c[i] = left;
      out.push_back(c);
      return;
    }
    for (Count x = 0; x <= left; ++x) {
      c[i] = x;
      rec(i + 1, left - x);
    }
  };
  if (parts > 0) rec(0, total);
  return out;
}

struct OracleResult {
  Count c = 0;
  /// Lexicographically smallest infinite configuration of total c.
  std::optional<Configuration> witness;
  /// Single-vertex graph: no game is infinite and c = 0 by convention.
  bool degenerate = false;
  Count configurations_checked = 0;
};

/// Brute force: the first total t for which some configuration of t chips
/// has an infinite game. Terminates by t = M - N + 1 (pigeonhole).
inline OracleResult instability_oracle(const Multigraph& g, std::optional<Count> cap = std::nullopt,
                                       unsigned threads = 1) {
  if (!is_strongly_connected(g)) {
    throw Error(ErrorKind::kNotStronglyConnected, "oracle needs a strongly connected graph");
  }
  OracleResult result;
  if (g.size() == 1) {
    result.degenerate = true;
    return result;
  }
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  for (Count t = 1;; ++t) {
    if (cap && t > *cap) {
      throw Error(ErrorKind::kCapExceeded, "no infinite game with at most " +
                                               std::to_string(*cap) + " chips");
    }
    const auto configs = compositions(t, g.size());
    std::atomic<std::size_t> first{kNone};
    parallel_for(configs.size(), threads, [&](std::size_t i) {
      if (i > first.load(std::memory_order_relaxed)) return;
      if (!is_infinite(classify(g, configs[i]))) return;
      std::size_t cur = first.load();
      while (i < cur && !first.compare_exchange_weak(cur, i)) {
      }
    });
    result.configurations_checked += configs.size();
    if (first != kNone) {
      result.c = t;
      result.witness = configs[first];
      return result;
    }
  }
}

}  // namespace chipfire
