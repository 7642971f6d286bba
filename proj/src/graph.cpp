#include "dissectree/graph.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace dissectree {

AdjacencyGraph::AdjacencyGraph(int vertex_count, const std::vector<std::pair<int, int>>& edges) {
  if (vertex_count < 0) throw std::invalid_argument("negative vertex count");
  std::vector<std::pair<int, int>> arcs;
  arcs.reserve(edges.size() * 2);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= vertex_count || v >= vertex_count) {
      throw std::out_of_range("edge endpoint out of range");
    }
    if (u == v) continue;
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  }
  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
  offset_.assign(vertex_count + 1, 0);
  targets_.reserve(arcs.size());
  for (auto [u, v] : arcs) {
    ++offset_[u + 1];
    targets_.push_back(v);
  }
  for (int v = 0; v < vertex_count; ++v) offset_[v + 1] += offset_[v];
}

std::span<const int> AdjacencyGraph::neighbors(int v) const {
  return {targets_.data() + offset_[v], static_cast<std::size_t>(offset_[v + 1] - offset_[v])};
}

bool AdjacencyGraph::adjacent(int u, int v) const {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

void bfs_distances(const AdjacencyGraph& g, int source, std::vector<int>& dist, std::vector<int>& queue) {
  const int n = g.vertex_count();
  if (source < 0 || source >= n) throw std::out_of_range("bfs source out of range");
  dist.assign(n, -1);
  queue.resize(n);
  int head = 0, tail = 0;
  queue[tail++] = source;
  dist[source] = 0;
  while (head < tail) {
    const int v = queue[head++];
    for (int w : g.neighbors(v)) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue[tail++] = w;
      }
    }
  }
}

std::vector<int> bfs_distances(const AdjacencyGraph& g, int source) {
  std::vector<int> dist, queue;
  bfs_distances(g, source, dist, queue);
  return dist;
}

std::vector<std::vector<int>> distance_matrix(const AdjacencyGraph& g) {
  std::vector<std::vector<int>> out(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) out[v] = bfs_distances(g, v);
  return out;
}

int graph_diameter(const AdjacencyGraph& g) {
  const int n = g.vertex_count();
  if (n == 0) return 0;
  std::vector<int> lower(n, 0), upper(n, std::numeric_limits<int>::max());
  std::vector<int> candidates(n);
  for (int v = 0; v < n; ++v) candidates[v] = v;
  std::vector<int> dist, queue;
  int best = 0;
  bool pick_high = true;
  while (!candidates.empty()) {
    // Alternate between the loosest upper bound and the smallest lower bound.
    auto pick = pick_high ? std::max_element(candidates.begin(), candidates.end(),
                                             [&](int a, int b) { return upper[a] < upper[b]; })
                          : std::min_element(candidates.begin(), candidates.end(),
                                             [&](int a, int b) { return lower[a] < lower[b]; });
    pick_high = !pick_high;
    bfs_distances(g, *pick, dist, queue);
    int ecc = 0;
    for (int d : dist) {
      if (d < 0) throw std::invalid_argument("graph is disconnected");
      ecc = std::max(ecc, d);
    }
    best = std::max(best, ecc);
    std::size_t kept = 0;
    for (int w : candidates) {
      lower[w] = std::max({lower[w], dist[w], ecc - dist[w]});
      upper[w] = std::min(upper[w], ecc + dist[w]);
      if (lower[w] == upper[w]) best = std::max(best, lower[w]);
      if (upper[w] > best && lower[w] < upper[w]) candidates[kept++] = w;
    }
    candidates.resize(kept);
  }
  return best;
}

int graph_diameter_all_pairs(const AdjacencyGraph& g) {
  std::vector<int> dist, queue;
  int best = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    bfs_distances(g, v, dist, queue);
    for (int d : dist) {
      if (d < 0) throw std::invalid_argument("graph is disconnected");
      best = std::max(best, d);
    }
  }
  return best;
}

bool is_connected(const AdjacencyGraph& g) {
  if (g.vertex_count() == 0) return true;
  const auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

}  // namespace dissectree
