#pragma once

#include <cstddef>
#include <vector>

namespace negdep {

// Dinic max-flow on double capacities; augmenting paths below kFlowEps are
// treated as saturated. Sizes here are tiny (poset cubes and conditional
// supports), so asymptotics are irrelevant.
class MaxFlow {
 public:
  static constexpr double kFlowEps = 1e-15;

  explicit MaxFlow(int nodes);

  // Returns an id usable with set_capacity, so a graph built once can be
  // re-solved under different capacities (run() consumes residuals).
  std::size_t add_edge(int from, int to, double capacity);
  void set_capacity(std::size_t id, double capacity);  // zeroes the reverse residual
  double run(int source, int sink);

  // After run(): nodes reachable from the source in the residual graph
  // (the source side of a minimum cut).
  std::vector<char> min_cut_side(int source) const;

 private:
  struct Edge {
    int to;
    double cap;
    std::size_t rev;
  };

  bool bfs(int source, int sink);
  double dfs(int u, int sink, double pushed);

  std::vector<std::vector<Edge>> adj_;
  std::vector<std::pair<int, std::size_t>> edge_slots_;  // id -> (node, offset)
  std::vector<int> level_;
  std::vector<std::size_t> iter_;
};

}  // namespace negdep
