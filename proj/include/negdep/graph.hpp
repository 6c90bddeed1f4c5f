#pragma once

#include <utility>
#include <vector>

namespace negdep {

// Undirected graph; the edge list order defines the coordinates of the
// spanning-tree indicator vector.
struct Graph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
};

// Validates vertex indices and absence of self-loops; throws InputError.
void validate_graph(const Graph& g);
bool is_connected(const Graph& g);

}  // namespace negdep
