#include "dissectree/looptree.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dissectree {

namespace {

std::vector<std::pair<int, int>> loop_edges(const PlaneTree& tree) {
  if (tree.size() < 2) throw std::invalid_argument("loop graph needs at least 2 vertices");
  std::vector<std::pair<int, int>> edges;
  edges.reserve(2 * tree.size());
  for (int u = 0; u < tree.size(); ++u) {
    const auto ch = tree.children(u);
    if (ch.empty()) continue;
    edges.emplace_back(u, ch.front());
    edges.emplace_back(u, ch.back());
    for (std::size_t i = 0; i + 1 < ch.size(); ++i) edges.emplace_back(ch[i], ch[i + 1]);
  }
  return edges;
}

int find_root(std::vector<int>& parent, int v) {
  while (parent[v] != v) {
    parent[v] = parent[parent[v]];
    v = parent[v];
  }
  return v;
}

void mean_and_stderr(const std::vector<double>& xs, double& mean, double& se) {
  const double n = static_cast<double>(xs.size());
  mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  if (xs.size() < 2) {
    se = 0.0;
    return;
  }
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
}

}  // namespace

LoopGraph loop_of(const PlaneTree& tree) {
  LoopGraph out{AdjacencyGraph(tree.size(), loop_edges(tree)), {}};
  out.vertex_of.resize(tree.size());
  std::iota(out.vertex_of.begin(), out.vertex_of.end(), 0);
  return out;
}

LoopGraph loopbar_of(const PlaneTree& tree) {
  auto edges = loop_edges(tree);
  std::vector<int> uf(tree.size());
  std::iota(uf.begin(), uf.end(), 0);
  for (int u = 0; u < tree.size(); ++u) {
    const auto ch = tree.children(u);
    if (!ch.empty()) uf[find_root(uf, ch.back())] = find_root(uf, u);
  }
  std::vector<int> label(tree.size(), -1);
  LoopGraph out;
  out.vertex_of.resize(tree.size());
  int classes = 0;
  for (int v = 0; v < tree.size(); ++v) {
    const int r = find_root(uf, v);
    if (label[r] < 0) label[r] = classes++;
    out.vertex_of[v] = label[r];
  }
  for (auto& [a, b] : edges) {
    a = out.vertex_of[a];
    b = out.vertex_of[b];
  }
  out.graph = AdjacencyGraph(classes, edges);
  return out;
}

double mean_root_distance(const LoopGraph& loop) {
  const auto dist = bfs_distances(loop.graph, loop.vertex_of[0]);
  double total = 0.0;
  for (int v : loop.vertex_of) total += dist[v];
  return total / static_cast<double>(loop.vertex_of.size());
}

LoopStats loop_stats(const OffspringDistribution& mu, int n, int samples, Rng& rng, std::uint64_t attempt_cap) {
  if (n < 2) throw std::invalid_argument("loop_stats: n must be >= 2");
  if (samples < 1) throw std::invalid_argument("loop_stats: samples must be >= 1");
  std::vector<double> ld, lh, bd, bh;
  for (int s = 0; s < samples; ++s) {
    const auto tree = sample_conditioned_vertices(mu, n, rng, attempt_cap).tree;
    const auto loop = loop_of(tree);
    const auto bar = loopbar_of(tree);
    ld.push_back(graph_diameter(loop.graph));
    lh.push_back(mean_root_distance(loop));
    bd.push_back(graph_diameter(bar.graph));
    bh.push_back(mean_root_distance(bar));
  }
  LoopStats out;
  out.samples = samples;
  mean_and_stderr(ld, out.loop_diameter_mean, out.loop_diameter_stderr);
  mean_and_stderr(lh, out.loop_height_mean, out.loop_height_stderr);
  mean_and_stderr(bd, out.loopbar_diameter_mean, out.loopbar_diameter_stderr);
  mean_and_stderr(bh, out.loopbar_height_mean, out.loopbar_height_stderr);
  return out;
}

}  // namespace dissectree
