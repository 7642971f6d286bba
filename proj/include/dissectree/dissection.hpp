#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dissectree/graph.hpp"
#include "dissectree/offspring.hpp"
#include "dissectree/plane_tree.hpp"
#include "dissectree/rng.hpp"

namespace dissectree {

using Chord = std::pair<int, int>;  // first < second

/// Polygon with vertices 0..n-1, its n sides and a set of non-crossing
/// diagonals. Immutable; chords are kept sorted.
class Dissection {
 public:
  /// Validates every chord (not a side, in range, no repeats, no crossings).
  static Dissection from_chords(int n, std::vector<Chord> chords);

  /// "n" on the first line, then comma-separated "a-b" chords.
  static Dissection parse(std::string_view text);
  std::string to_string() const;

  int n() const { return n_; }
  const std::vector<Chord>& chords() const { return chords_; }
  /// Sides plus chords.
  const AdjacencyGraph& graph() const { return graph_; }

  bool operator==(const Dissection& other) const { return n_ == other.n_ && chords_ == other.chords_; }
  auto operator<=>(const Dissection& other) const {
    if (auto c = n_ <=> other.n_; c != 0) return c;
    return chords_ <=> other.chords_;
  }

 private:
  Dissection(int n, std::vector<Chord> chords);

  int n_ = 0;
  std::vector<Chord> chords_;
  AdjacencyGraph graph_;
};

/// Dissection whose dual planted tree is plant(tree). Leaf l_k (k >= 1)
/// sits on side (k-1, k) and l_0 on side (n-1, 0).
Dissection from_tree(const PlaneTree& tree);
/// Inverse of from_tree.
PlaneTree to_tree(const Dissection& d);

/// Inner faces in preorder of the dual tree; each face lists its polygon
/// vertices in increasing order.
struct FaceSet {
  std::vector<std::vector<int>> faces;
  std::vector<int> degrees() const;
};

FaceSet faces(const Dissection& d);

/// Product over inner faces of mu_{deg - 1}.
double boltzmann_weight(const Dissection& d, const OffspringDistribution& mu);
/// Sum of log mu_{deg - 1}; -inf when some factor vanishes.
double log_boltzmann_weight(const Dissection& d, const OffspringDistribution& mu);
/// Z_n, exhaustive over all dissections of P_n. n <= 12.
double partition_function(int n, const OffspringDistribution& mu);

std::vector<int> bfs_distances(const Dissection& d, int v);
std::vector<std::vector<int>> distance_matrix(const Dissection& d);
int diameter(const Dissection& d);
/// Largest distance from vertex 0.
int radius(const Dissection& d);

struct BoltzmannSample {
  Dissection dissection;
  PlaneTree tree;
  std::uint64_t attempts = 0;
};

/// Exact P_n^mu sample through the dual leaf-conditioned GW tree.
BoltzmannSample sample_boltzmann(const OffspringDistribution& mu, int n, Rng& rng,
                                 std::uint64_t attempt_cap = kDefaultAttemptCap);

/// All dissections of P_n as the image of the no-unary trees with n-1
/// leaves, sorted. 3 <= n <= 12.
std::vector<Dissection> enumerate_dissections(int n);
/// All dissections of P_n by direct search over non-crossing chord sets,
/// sorted. 3 <= n <= 10.
std::vector<Dissection> enumerate_dissections_direct(int n);

}  // namespace dissectree
