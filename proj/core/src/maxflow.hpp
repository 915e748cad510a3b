#pragma once

#include <cstddef>
#include <vector>

namespace wtv::detail {

/// Dinic max-flow on a small dense-ish graph with double capacities.
/// After run(), min_cut_source_side() gives the canonical minimal cut:
/// exactly the vertices still reachable from the source in the residual
/// graph.
class MaxFlow {
 public:
  explicit MaxFlow(int node_count);

  /// Adds a directed edge and its reverse with the given capacities.
  void add_edge(int u, int v, double cap, double rev_cap);

  double run(int source, int sink);

  /// Residual reachability from the source; valid after run().
  const std::vector<char>& min_cut_source_side() const { return reachable_; }

 private:
  struct Edge {
    int to;
    double cap;
    std::size_t rev;  // index of the reverse edge in adj_[to]
  };
  bool bfs(int s, int t);
  double dfs(int v, int t, double pushed);

  std::vector<std::vector<Edge>> adj_;
  std::vector<int> level_, iter_;
  std::vector<char> reachable_;
  double eps_ = 0.0;
};

}  // namespace wtv::detail
