#pragma once

#include <cstdint>
#include <vector>

#include "dissectree/graph.hpp"
#include "dissectree/offspring.hpp"
#include "dissectree/plane_tree.hpp"
#include "dissectree/rng.hpp"

namespace dissectree {

struct LoopGraph {
  AdjacencyGraph graph;
  /// Loop-graph vertex carrying each tree vertex.
  std::vector<int> vertex_of;
};

/// u ~ v iff consecutive siblings, or v is the first or the last child of u.
LoopGraph loop_of(const PlaneTree& tree);
/// loop_of with every (parent, last child) edge contracted.
LoopGraph loopbar_of(const PlaneTree& tree);

/// Mean graph distance from the image of the tree root to every tree vertex.
double mean_root_distance(const LoopGraph& loop);

struct LoopStats {
  int samples = 0;
  double loop_diameter_mean = 0.0, loop_diameter_stderr = 0.0;
  double loop_height_mean = 0.0, loop_height_stderr = 0.0;
  double loopbar_diameter_mean = 0.0, loopbar_diameter_stderr = 0.0;
  double loopbar_height_mean = 0.0, loopbar_height_stderr = 0.0;
};

/// Samples GW trees conditioned on n vertices and aggregates diameters and
/// mean root distances of both variants.
LoopStats loop_stats(const OffspringDistribution& mu, int n, int samples, Rng& rng,
                     std::uint64_t attempt_cap = kDefaultAttemptCap);

}  // namespace dissectree
