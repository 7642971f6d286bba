#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dissectree/offspring.hpp"
#include "dissectree/rng.hpp"

namespace dissectree {

/// Rooted ordered tree stored as its preorder child-count sequence
/// (Lukasiewicz encoding). Vertex ids are preorder ranks; vertex 0 is the
/// root. Parents, children, depths and the leaf order are derived eagerly.
class PlaneTree {
 public:
  /// Throws std::invalid_argument unless `degrees` is a valid encoding.
  /// With no_unary set, vertices with exactly one child are rejected too.
  static PlaneTree from_degrees(std::vector<int> degrees, bool no_unary = false);

  /// Parses whitespace-separated child counts, e.g. "2 0 0".
  static PlaneTree parse(std::string_view text);
  std::string to_string() const;

  int size() const { return static_cast<int>(degrees_.size()); }
  int degree(int v) const { return degrees_[v]; }
  const std::vector<int>& degrees() const { return degrees_; }
  int parent(int v) const { return parent_[v]; }
  std::span<const int> children(int v) const;
  int depth(int v) const { return depth_[v]; }
  const std::vector<int>& depths() const { return depth_; }
  /// 1-based rank of v among its siblings (0 for the root).
  int child_rank(int v) const { return child_rank_[v]; }
  /// One past the last preorder id in the subtree of v.
  int subtree_end(int v) const { return subtree_end_[v]; }
  bool is_leaf(int v) const { return degrees_[v] == 0; }
  /// Leaves in preorder, i.e. lexicographic order.
  const std::vector<int>& leaves() const { return leaves_; }
  int leaf_count() const { return static_cast<int>(leaves_.size()); }
  int height() const;
  bool has_unary_vertex() const;

  bool operator==(const PlaneTree& other) const { return degrees_ == other.degrees_; }
  auto operator<=>(const PlaneTree& other) const { return degrees_ <=> other.degrees_; }

 private:
  PlaneTree() = default;

  std::vector<int> degrees_;
  std::vector<int> parent_;
  std::vector<int> child_offset_;
  std::vector<int> child_ids_;
  std::vector<int> depth_;
  std::vector<int> child_rank_;
  std::vector<int> subtree_end_;
  std::vector<int> leaves_;
};

/// Planted tree: a new root with exactly one child (the original root).
/// Its leaves are l_0 = the planted root, then the leaves of the original
/// tree in lexicographic order.
class PlantedTree {
 public:
  /// Throws std::invalid_argument if the root does not have exactly one child.
  explicit PlantedTree(PlaneTree tree);

  const PlaneTree& tree() const { return tree_; }
  /// Number of leaves counting the planted root.
  int leaf_count() const { return tree_.leaf_count() + 1; }
  /// Vertex id of l_k.
  int leaf(int k) const;

 private:
  PlaneTree tree_;
};

PlantedTree plant(const PlaneTree& tree);
PlaneTree unplant(const PlantedTree& planted);

/// Sampling outcome; `tree` is empty when the attempt was aborted.
std::optional<PlaneTree> sample_gw(const OffspringDistribution& mu, Rng& rng,
                                   std::optional<int> leaf_cap = std::nullopt);

struct ConditionedTree {
  PlaneTree tree;
  std::uint64_t attempts = 0;
};

inline constexpr std::uint64_t kDefaultAttemptCap = 100'000'000;

/// Exact GW_mu( . | leaves = n_leaves) by rejection with early abort.
/// Throws SamplerCapExhausted after attempt_cap failures.
ConditionedTree sample_conditioned_leaves(const OffspringDistribution& mu, int n_leaves, Rng& rng,
                                          std::uint64_t attempt_cap = kDefaultAttemptCap);

/// Exact GW_mu( . | vertices = n) by rejection with early abort.
ConditionedTree sample_conditioned_vertices(const OffspringDistribution& mu, int n, Rng& rng,
                                            std::uint64_t attempt_cap = kDefaultAttemptCap);

/// Raw attempt used by the acceptance-rate probe: true when an unconditioned
/// GW tree has exactly n_leaves leaves. Does not materialize the tree.
bool gw_attempt_hits_leaf_count(const OffspringDistribution& mu, int n_leaves, Rng& rng);

int tree_distance(const PlaneTree& tree, int u, int v);
/// Double breadth-first sweep.
int tree_diameter(const PlaneTree& tree);
/// Height |u| of every vertex.
std::vector<int> heights(const PlaneTree& tree);

/// (g, d) = (children left of the path, children right of the path) at one
/// vertex of an ancestral line.
struct Split {
  int g = 0;
  int d = 0;

  bool operator==(const Split&) const = default;
};

/// Splits at w_1 .. w_{m-1} along the path w_0 = root, ..., w_m = u.
std::vector<Split> path_splits(const PlaneTree& tree, int u);

/// Splits along [[l_0, l_k]] of a planted tree, 1 <= k.
std::vector<Split> spine_splits(const PlantedTree& planted, int k);

/// tau_[u]: the path [[root, u]] plus every child of a path vertex.
struct RestrictedTree {
  PlaneTree tree;
  int target = 0;  // id of u inside `tree`
};

RestrictedTree restricted_tree(const PlaneTree& tree, int u);

/// Every plane tree with n_leaves leaves and no unary vertex, once each,
/// in increasing lexicographic order of the encoding. n_leaves <= 11.
std::vector<PlaneTree> enumerate_no_unary_trees(int n_leaves);

}  // namespace dissectree
