#include "negdep/maxflow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace negdep {

MaxFlow::MaxFlow(int nodes)
    : adj_(static_cast<std::size_t>(nodes)),
      level_(static_cast<std::size_t>(nodes)),
      iter_(static_cast<std::size_t>(nodes)) {}

std::size_t MaxFlow::add_edge(int from, int to, double capacity) {
  adj_[static_cast<std::size_t>(from)].push_back({to, capacity, adj_[static_cast<std::size_t>(to)].size()});
  adj_[static_cast<std::size_t>(to)].push_back({from, 0.0, adj_[static_cast<std::size_t>(from)].size() - 1});
  edge_slots_.emplace_back(from, adj_[static_cast<std::size_t>(from)].size() - 1);
  return edge_slots_.size() - 1;
}

void MaxFlow::set_capacity(std::size_t id, double capacity) {
  const auto [node, offset] = edge_slots_[id];
  Edge& e = adj_[static_cast<std::size_t>(node)][offset];
  e.cap = capacity;
  adj_[static_cast<std::size_t>(e.to)][e.rev].cap = 0.0;
}

bool MaxFlow::bfs(int source, int sink) {
  std::fill(level_.begin(), level_.end(), -1);
  std::queue<int> q;
  level_[static_cast<std::size_t>(source)] = 0;
  q.push(source);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (const Edge& e : adj_[static_cast<std::size_t>(u)]) {
      if (e.cap > kFlowEps && level_[static_cast<std::size_t>(e.to)] < 0) {
        level_[static_cast<std::size_t>(e.to)] = level_[static_cast<std::size_t>(u)] + 1;
        q.push(e.to);
      }
    }
  }
  return level_[static_cast<std::size_t>(sink)] >= 0;
}

double MaxFlow::dfs(int u, int sink, double pushed) {
  if (u == sink) return pushed;
  for (std::size_t& i = iter_[static_cast<std::size_t>(u)]; i < adj_[static_cast<std::size_t>(u)].size(); ++i) {
    Edge& e = adj_[static_cast<std::size_t>(u)][i];
    if (e.cap <= kFlowEps || level_[static_cast<std::size_t>(e.to)] != level_[static_cast<std::size_t>(u)] + 1)
      continue;
    const double got = dfs(e.to, sink, std::min(pushed, e.cap));
    if (got > kFlowEps) {
      e.cap -= got;
      adj_[static_cast<std::size_t>(e.to)][e.rev].cap += got;
      return got;
    }
  }
  return 0.0;
}

double MaxFlow::run(int source, int sink) {
  double flow = 0.0;
  while (bfs(source, sink)) {
    std::fill(iter_.begin(), iter_.end(), 0);
    while (true) {
      const double got = dfs(source, sink, std::numeric_limits<double>::infinity());
      if (got <= kFlowEps) break;
      flow += got;
    }
  }
  return flow;
}

std::vector<char> MaxFlow::min_cut_side(int source) const {
  std::vector<char> side(adj_.size(), 0);
  std::queue<int> q;
  side[static_cast<std::size_t>(source)] = 1;
  q.push(source);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (const Edge& e : adj_[static_cast<std::size_t>(u)]) {
      if (e.cap > kFlowEps && !side[static_cast<std::size_t>(e.to)]) {
        side[static_cast<std::size_t>(e.to)] = 1;
        q.push(e.to);
      }
    }
  }
  return side;
}

}  // namespace negdep
