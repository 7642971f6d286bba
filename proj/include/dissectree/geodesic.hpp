#pragma once

#include <vector>

#include "dissectree/plane_tree.hpp"

namespace dissectree {

/// Which endpoint of the current dual edge the geodesic sits on.
enum class Position { L, R, U };

struct GeodStep {
  int ds = 0;
  Position next = Position::L;

  bool operator==(const GeodStep&) const = default;
};

/// Length increment and next position when the tree path passes a vertex
/// with g children on its left and d on its right.
GeodStep geod_step(Position p, int g, int d);

/// Folds geod_step over `splits` from (s, p) = (0, L); returns s.
int fold_geod(const std::vector<Split>& splits);

/// H(l_k) for 1 <= k <= n-1.
int height_H(const PlantedTree& planted, int k);

/// H_tau(u), computed on the restricted tree tau_[u]. The root of `tree`
/// plays the role of l_0, so H(root) = 0 and H = 0 at height 1.
int height_H_general(const PlaneTree& tree, int u);

/// H for every vertex in one preorder pass.
std::vector<int> all_heights_H(const PlaneTree& tree);

/// max over k of |d_D(0, k) - H(l_k)| for D = from_tree(tree).
int max_distance_slack(const PlaneTree& tree);

}  // namespace dissectree
