#include "dissectree/geodesic.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "dissectree/dissection.hpp"
#include "dissectree/graph.hpp"

namespace dissectree {

GeodStep geod_step(Position p, int g, int d) {
  switch (p) {
    case Position::R:
      if (d < g + 1) return {d, Position::R};
      if (d > g + 1) return {g + 1, Position::L};
      return {d, Position::U};
    case Position::L:
      if (g < d + 1) return {g, Position::L};
      if (g > d + 1) return {d + 1, Position::R};
      return {g, Position::U};
    case Position::U:
      if (d < g) return {d, Position::R};
      if (d > g) return {g, Position::L};
      return {d, Position::U};
  }
  throw std::logic_error("unreachable position");
}

int fold_geod(const std::vector<Split>& splits) {
  int s = 0;
  Position p = Position::L;
  for (const auto& [g, d] : splits) {
    const auto step = geod_step(p, g, d);
    s += step.ds;
    p = step.next;
  }
  return s;
}

int height_H(const PlantedTree& planted, int k) { return fold_geod(spine_splits(planted, k)); }

int height_H_general(const PlaneTree& tree, int u) {
  if (u < 0 || u >= tree.size()) throw std::out_of_range("vertex index out of range");
  if (u == 0) return 0;
  const auto restricted = restricted_tree(tree, u);
  return fold_geod(path_splits(restricted.tree, restricted.target));
}

std::vector<int> all_heights_H(const PlaneTree& tree) {
  const int n = tree.size();
  std::vector<int> h(n, 0);
  std::vector<Position> pos(n, Position::L);
  // Preorder ids: a parent is always processed before its children.
  for (int v = 1; v < n; ++v) {
    const int p = tree.parent(v);
    if (p == 0) continue;  // children of the root start at (0, L)
    const int rank = tree.child_rank(v);
    const auto step = geod_step(pos[p], rank - 1, tree.degree(p) - rank);
    h[v] = h[p] + step.ds;
    pos[v] = step.next;
  }
  return h;
}

int max_distance_slack(const PlaneTree& tree) {
  const auto dissection = from_tree(tree);
  const auto planted = plant(tree);
  const auto graph = dissection.graph();
  const auto dist = bfs_distances(graph, 0);
  const auto h = all_heights_H(planted.tree());
  int slack = 0;
  for (int k = 1; k < planted.leaf_count(); ++k) {
    slack = std::max(slack, std::abs(dist[k] - h[planted.leaf(k)]));
  }
  return slack;
}

}  // namespace dissectree
