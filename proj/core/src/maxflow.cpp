#include "maxflow.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace wtv::detail {

MaxFlow::MaxFlow(int node_count)
    : adj_(node_count), level_(node_count), iter_(node_count) {}

void MaxFlow::add_edge(int u, int v, double cap, double rev_cap) {
  adj_[u].push_back({v, cap, adj_[v].size()});
  adj_[v].push_back({u, rev_cap, adj_[u].size() - 1});
}

bool MaxFlow::bfs(int s, int t) {
  std::fill(level_.begin(), level_.end(), -1);
  std::deque<int> q{s};
  level_[s] = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (const Edge& e : adj_[v])
      if (e.cap > eps_ && level_[e.to] < 0) {
        level_[e.to] = level_[v] + 1;
        q.push_back(e.to);
      }
  }
  return level_[t] >= 0;
}

// Iterative blocking-flow DFS (augmenting paths can be long on big grids).
double MaxFlow::dfs(int s, int t, double) {
  std::vector<int> path{s};
  double pushed = 0.0;
  while (!path.empty()) {
    int v = path.back();
    if (v == t) {
      double bottleneck = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k + 1 < path.size(); ++k)
        bottleneck = std::min(bottleneck, adj_[path[k]][iter_[path[k]]].cap);
      for (std::size_t k = 0; k + 1 < path.size(); ++k) {
        Edge& e = adj_[path[k]][iter_[path[k]]];
        e.cap -= bottleneck;
        adj_[e.to][e.rev].cap += bottleneck;
      }
      pushed = bottleneck;
      break;
    }
    bool advanced = false;
    for (; std::size_t(iter_[v]) < adj_[v].size(); ++iter_[v]) {
      const Edge& e = adj_[v][iter_[v]];
      if (e.cap > eps_ && level_[e.to] == level_[v] + 1) {
        path.push_back(e.to);
        advanced = true;
        break;
      }
    }
    if (!advanced) {
      level_[v] = -1;  // dead end for this phase
      path.pop_back();
      if (!path.empty()) ++iter_[path.back()];
    }
  }
  return pushed;
}

double MaxFlow::run(int source, int sink) {
  double max_cap = 0.0;
  for (const auto& edges : adj_)
    for (const Edge& e : edges) max_cap = std::max(max_cap, e.cap);
  eps_ = 1e-12 * std::max(1.0, max_cap);

  double flow = 0.0;
  while (bfs(source, sink)) {
    std::fill(iter_.begin(), iter_.end(), 0);
    while (true) {
      double got = dfs(source, sink, 0.0);
      if (got <= 0.0) break;
      flow += got;
    }
  }
  reachable_.assign(adj_.size(), 0);
  std::deque<int> q{source};
  reachable_[source] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (const Edge& e : adj_[v])
      if (e.cap > eps_ && !reachable_[e.to]) {
        reachable_[e.to] = 1;
        q.push_back(e.to);
      }
  }
  return flow;
}

}  // namespace wtv::detail
