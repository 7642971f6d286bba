#pragma once

#include <span>
#include <utility>
#include <vector>

namespace dissectree {

/// Simple undirected graph in compressed adjacency form. Neighbor lists are
/// sorted; self-loops and repeated edges are dropped on construction.
class AdjacencyGraph {
 public:
  AdjacencyGraph() = default;
  AdjacencyGraph(int vertex_count, const std::vector<std::pair<int, int>>& edges);

  int vertex_count() const { return static_cast<int>(offset_.empty() ? 0 : offset_.size() - 1); }
  int edge_count() const { return static_cast<int>(targets_.size() / 2); }
  std::span<const int> neighbors(int v) const;
  bool adjacent(int u, int v) const;

 private:
  std::vector<int> offset_;
  std::vector<int> targets_;
};

/// Unreachable vertices get -1.
std::vector<int> bfs_distances(const AdjacencyGraph& g, int source);
/// Same, reusing caller buffers (queue and output) to avoid reallocation.
void bfs_distances(const AdjacencyGraph& g, int source, std::vector<int>& dist, std::vector<int>& queue);

std::vector<std::vector<int>> distance_matrix(const AdjacencyGraph& g);
/// Exact diameter; eccentricity bounds from a few sweeps prune the
/// sources. Throws if disconnected.
int graph_diameter(const AdjacencyGraph& g);
/// Exact diameter by a BFS from every vertex.
int graph_diameter_all_pairs(const AdjacencyGraph& g);
bool is_connected(const AdjacencyGraph& g);

}  // namespace dissectree
