#pragma once

#include <cstddef>
#include <deque>
#include <limits>
#include <vector>

namespace bvmatch {

/// Shortest-augmenting-path (Edmonds-Karp) maximum flow, exact for any ordered
/// field or integer capacity type. The number of augmentations is bounded by
/// O(VE) independent of capacity values, and BFS visits edges in insertion
/// order, so results are deterministic.
template <typename Cap>
class MaxFlow {
 public:
  explicit MaxFlow(std::size_t nodes) : adj_(nodes) {}

  std::size_t add_node() {
    adj_.emplace_back();
    return adj_.size() - 1;
  }

  std::size_t node_count() const { return adj_.size(); }

  /// Returns an edge handle usable with flow().
  std::size_t add_edge(std::size_t from, std::size_t to, Cap cap) {
    std::size_t id = edges_.size();
    edges_.push_back({to, cap, Cap{}});
    edges_.push_back({from, Cap{}, Cap{}});
    adj_[from].push_back(id);
    adj_[to].push_back(id + 1);
    return id;
  }

  std::size_t edge_count() const { return edges_.size() / 2; }
  std::size_t edge_from(std::size_t id) const { return edges_[id ^ 1].to; }
  std::size_t edge_to(std::size_t id) const { return edges_[id].to; }
  const Cap& capacity(std::size_t id) const { return edges_[id].cap; }
  const Cap& flow(std::size_t id) const { return edges_[id].flow; }

  Cap run(std::size_t source, std::size_t sink) {
    Cap total{};
    std::vector<std::size_t> via(adj_.size());
    while (true) {
      std::vector<bool> seen(adj_.size(), false);
      std::deque<std::size_t> queue{source};
      seen[source] = true;
      while (!queue.empty() && !seen[sink]) {
        std::size_t u = queue.front();
        queue.pop_front();
        for (std::size_t id : adj_[u]) {
          const auto& e = edges_[id];
          if (!seen[e.to] && e.flow < e.cap) {
            seen[e.to] = true;
            via[e.to] = id;
            queue.push_back(e.to);
          }
        }
      }
      if (!seen[sink]) break;
      Cap push = residual(via[sink]);
      for (std::size_t v = sink; v != source; v = edges_[via[v] ^ 1].to) {
        Cap r = residual(via[v]);
        if (r < push) push = r;
      }
      for (std::size_t v = sink; v != source; v = edges_[via[v] ^ 1].to) {
        edges_[via[v]].flow += push;
        edges_[via[v] ^ 1].flow -= push;
      }
      total += push;
    }
    return total;
  }

  /// Nodes reachable from source in the residual graph: the source side of a
  /// minimum cut once run() has finished.
  std::vector<bool> source_side(std::size_t source) const {
    std::vector<bool> seen(adj_.size(), false);
    std::deque<std::size_t> queue{source};
    seen[source] = true;
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t id : adj_[u]) {
        const auto& e = edges_[id];
        if (!seen[e.to] && e.flow < e.cap) {
          seen[e.to] = true;
          queue.push_back(e.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Edge {
    std::size_t to;
    Cap cap;
    Cap flow;
  };

  Cap residual(std::size_t id) const { return edges_[id].cap - edges_[id].flow; }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Edge> edges_;
};

}  // namespace bvmatch
