#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

namespace chipfire {

/// Edmonds-Karp max-flow on a small residual network. Sized for the
/// transportation instances built per vertex ordering (tens of nodes).
class FlowNetwork {
 public:
  using Cap = std::uint64_t;

  explicit FlowNetwork(std::size_t nodes = 0) { reset(nodes); }

  void reset(std::size_t nodes) {
    head_.assign(nodes, kNil);
    to_.clear();
    cap_.clear();
    next_.clear();
    original_.clear();
  }

  std::size_t node_count() const noexcept { return head_.size(); }

  std::size_t add_node() {
    head_.push_back(kNil);
    return head_.size() - 1;
  }

  /// Returns an id for flow() lookups.
  std::size_t add_edge(std::size_t from, std::size_t to, Cap cap) {
    const std::size_t id = to_.size();
    push(from, to, cap);
    push(to, from, 0);
    original_.push_back(cap);
    original_.push_back(0);
    return id;
  }

  Cap flow(std::size_t edge) const { return original_[edge] - cap_[edge]; }

  Cap max_flow(std::size_t source, std::size_t sink) {
    Cap total = 0;
    std::vector<std::size_t> parent_edge(head_.size());
    std::vector<std::size_t> queue;
    queue.reserve(head_.size());
    while (true) {
      std::fill(parent_edge.begin(), parent_edge.end(), kNil);
      queue.clear();
      queue.push_back(source);
      parent_edge[source] = kRoot;
      for (std::size_t qi = 0; qi < queue.size() && parent_edge[sink] == kNil; ++qi) {
        const std::size_t u = queue[qi];
        for (std::size_t e = head_[u]; e != kNil; e = next_[e]) {
          if (cap_[e] > 0 && parent_edge[to_[e]] == kNil) {
            parent_edge[to_[e]] = e;
            queue.push_back(to_[e]);
          }
        }
      }
      if (parent_edge[sink] == kNil) return total;
      Cap push_amount = std::numeric_limits<Cap>::max();
      for (std::size_t v = sink; v != source; v = to_[parent_edge[v] ^ 1]) {
        push_amount = std::min(push_amount, cap_[parent_edge[v]]);
      }
      for (std::size_t v = sink; v != source; v = to_[parent_edge[v] ^ 1]) {
        cap_[parent_edge[v]] -= push_amount;
        cap_[parent_edge[v] ^ 1] += push_amount;
      }
      total += push_amount;
    }
  }

 private:
  static constexpr std::size_t kNil = std::numeric_limits<std::size_t>::max();
  static constexpr std::size_t kRoot = kNil - 1;

  void push(std::size_t from, std::size_t to, Cap cap) {
    to_.push_back(to);
    cap_.push_back(cap);
    next_.push_back(head_[from]);
    head_[from] = to_.size() - 1;
  }

  std::vector<std::size_t> head_;
  std::vector<std::size_t> to_;
  std::vector<Cap> cap_;
  std::vector<std::size_t> next_;
  std::vector<Cap> original_;
};

}  // namespace chipfire
