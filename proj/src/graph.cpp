#include "negdep/graph.hpp"

#include <vector>

#include "negdep/errors.hpp"

namespace negdep {

void validate_graph(const Graph& g) {
  if (g.vertices < 1) throw InputError("Graph: need at least one vertex");
  for (auto [u, v] : g.edges) {
    if (u < 0 || v < 0 || u >= g.vertices || v >= g.vertices)
      throw InputError("Graph: edge endpoint out of range");
    if (u == v) throw InputError("Graph: self-loops are not allowed");
  }
}

bool is_connected(const Graph& g) {
  if (g.vertices <= 1) return true;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(g.vertices));
  for (auto [u, v] : g.edges) {
    adj[static_cast<std::size_t>(u)].push_back(v);
    adj[static_cast<std::size_t>(v)].push_back(u);
  }
  std::vector<char> seen(static_cast<std::size_t>(g.vertices), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int w : adj[static_cast<std::size_t>(u)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == g.vertices;
}

}  // namespace negdep
