#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "chipfire/error.hpp"

namespace chipfire {

using Vertex = std::size_t;
using Count = std::uint64_t;
using BigInt = boost::multiprecision::cpp_int;

/// One input arc line: `mult` parallel edges from `src` to `dst`.
struct ArcSpec {
  std::string src;
  std::string dst;
  std::int64_t mult = 1;
};

inline bool is_valid_name(std::string_view name) {
  if (name.empty() || name.front() == '#') return false;
  return std::none_of(name.begin(), name.end(), [](unsigned char ch) {
    return ch <= ' ' || ch == 0x7f;
  });
}

/// Loop-free directed multigraph stored as a dense multiplicity matrix.
/// Immutable once built; vertex indices follow name insertion order.
class Multigraph {
 public:
  /// Accumulates duplicate arcs. Vertices are `names` followed by any arc
  /// endpoints not declared there, in first-appearance order.
  static Multigraph build(const std::vector<std::string>& names,
                          const std::vector<ArcSpec>& arcs) {
    Multigraph g;
    for (const auto& name : names) g.intern(name);
    for (const auto& arc : arcs) {
      g.intern(arc.src);
      g.intern(arc.dst);
    }
    const std::size_t n = g.names_.size();
    if (n == 0) {
      throw Error(ErrorKind::kInvalidArgument, "graph has no vertices");
    }
    g.mult_.assign(n * n, 0);
    for (const auto& arc : arcs) {
      if (arc.src == arc.dst) {
        throw Error(ErrorKind::kLoopEdge, "loop edge on vertex '" + arc.src + "'");
      }
      if (arc.mult < 0) {
        throw Error(ErrorKind::kNegativeMultiplicity,
                    "negative multiplicity on " + arc.src + " -> " + arc.dst);
      }
      g.mult_[g.index_.at(arc.src) * n + g.index_.at(arc.dst)] +=
          static_cast<Count>(arc.mult);
    }
    g.finish();
    return g;
  }

  /// Builds from a row-major n*n multiplicity matrix with generated names.
  static Multigraph from_matrix(std::size_t n, std::vector<Count> mult,
                                std::string_view prefix = "v") {
    if (n == 0 || mult.size() != n * n) {
      throw Error(ErrorKind::kInvalidArgument, "matrix shape mismatch");
    }
    Multigraph g;
    for (std::size_t i = 0; i < n; ++i) g.intern(std::string(prefix) + std::to_string(i));
    g.mult_ = std::move(mult);
    for (std::size_t i = 0; i < n; ++i) {
      if (g.mult_[i * n + i] != 0) {
        throw Error(ErrorKind::kLoopEdge, "loop edge on vertex '" + g.names_[i] + "'");
      }
    }
    g.finish();
    return g;
  }

  std::size_t size() const noexcept { return names_.size(); }
  Count edges(Vertex from, Vertex to) const noexcept { return mult_[from * size() + to]; }
  Count out_degree(Vertex v) const noexcept { return out_[v]; }
  Count in_degree(Vertex v) const noexcept { return in_[v]; }
  Count total_edges() const noexcept { return total_; }
  Count max_out_degree() const noexcept {
    return out_.empty() ? 0 : *std::max_element(out_.begin(), out_.end());
  }

  const std::string& name(Vertex v) const { return names_.at(v); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  Vertex index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) {
      throw Error(ErrorKind::kInvalidArgument, "unknown vertex '" + name + "'");
    }
    return it->second;
  }
  const std::vector<Count>& matrix() const noexcept { return mult_; }

  friend bool operator==(const Multigraph& a, const Multigraph& b) {
    return a.names_ == b.names_ && a.mult_ == b.mult_;
  }

 private:
  void intern(const std::string& name) {
    if (!is_valid_name(name)) {
      throw Error(ErrorKind::kBadName, "malformed vertex name '" + name + "'");
    }
    if (index_.emplace(name, names_.size()).second) names_.push_back(name);
  }

  void finish() {
    const std::size_t n = size();
    out_.assign(n, 0);
    in_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        out_[i] += mult_[i * n + j];
        in_[j] += mult_[i * n + j];
      }
    }
    total_ = std::accumulate(out_.begin(), out_.end(), Count{0});
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, Vertex> index_;
  std::vector<Count> mult_;
  std::vector<Count> out_;
  std::vector<Count> in_;
  Count total_ = 0;
};

namespace detail {

inline std::vector<bool> reachable(const Multigraph& g, Vertex start, bool reverse) {
  const std::size_t n = g.size();
  std::vector<bool> seen(n, false);
  std::vector<Vertex> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    for (Vertex w = 0; w < n; ++w) {
      const Count e = reverse ? g.edges(w, v) : g.edges(v, w);
      if (e > 0 && !seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  return seen;
}

}  // namespace detail

inline bool is_strongly_connected(const Multigraph& g) {
  const auto all = [](const std::vector<bool>& s) {
    return std::all_of(s.begin(), s.end(), [](bool b) { return b; });
  };
  return all(detail::reachable(g, 0, false)) && all(detail::reachable(g, 0, true));
}

inline bool is_eulerian(const Multigraph& g) {
  for (Vertex v = 0; v < g.size(); ++v) {
    if (g.out_degree(v) != g.in_degree(v)) return false;
  }
  return true;
}

inline bool is_loop_free(const Multigraph& g) {
  for (Vertex v = 0; v < g.size(); ++v) {
    if (g.edges(v, v) != 0) return false;
  }
  return true;
}

/// Square matrix of arbitrary-precision integers, row-major.
class IntMatrix {
 public:
  explicit IntMatrix(std::size_t n) : n_(n), data_(n * n) {}

  std::size_t size() const noexcept { return n_; }
  BigInt& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const BigInt& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<BigInt> data_;
};

/// L(i,i) = d+(v_i), L(i,j) = -E(v_j, v_i). Columns sum to zero.
inline IntMatrix laplacian(const Multigraph& g) {
  const std::size_t n = g.size();
  IntMatrix lap(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      lap(i, j) = (i == j) ? BigInt(g.out_degree(i)) : -BigInt(g.edges(j, i));
    }
  }
  return lap;
}

/// Seeded test-corpus generator: a random directed Hamiltonian cycle with
/// multiplicities in [1, max_mult], plus each remaining ordered pair with
/// probability `density`. Deterministic for a fixed seed.
inline Multigraph random_strongly_connected(std::size_t n, Count max_mult, double density,
                                            std::uint64_t seed) {
  if (n < 2 || max_mult < 1) {
    throw Error(ErrorKind::kInvalidArgument, "random graph needs n >= 2 and max_mult >= 1");
  }
  std::mt19937_64 rng(seed);
  const auto draw_mult = [&] { return 1 + rng() % max_mult; };
  const auto coin = [&] {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53 < density;
  };

  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), Vertex{0});
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(order[i], order[rng() % (i + 1)]);
  }

  std::vector<Count> mult(n * n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    mult[order[k] * n + order[(k + 1) % n]] = draw_mult();
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (coin()) mult[i * n + j] = std::max(mult[i * n + j], draw_mult());
    }
  }
  return Multigraph::from_matrix(n, std::move(mult));
}

}  // namespace chipfire
