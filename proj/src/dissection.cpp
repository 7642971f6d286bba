#include "dissectree/dissection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace dissectree {

namespace {

AdjacencyGraph polygon_graph(int n, const std::vector<Chord>& chords) {
  std::vector<std::pair<int, int>> edges;
  edges.reserve(n + chords.size());
  for (int v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
  edges.insert(edges.end(), chords.begin(), chords.end());
  return AdjacencyGraph(n, edges);
}

bool is_side(int n, int a, int b) { return b - a == 1 || (a == 0 && b == n - 1); }

// Interval chords on a line are non-crossing iff they form a laminar family.
void check_non_crossing(const std::vector<Chord>& sorted_by_a_then_b_desc) {
  std::vector<Chord> stack;
  for (const auto& c : sorted_by_a_then_b_desc) {
    while (!stack.empty() && stack.back().second <= c.first) stack.pop_back();
    if (!stack.empty() && c.second > stack.back().second) {
      throw std::invalid_argument("chords " + std::to_string(stack.back().first) + "-" +
                                  std::to_string(stack.back().second) + " and " + std::to_string(c.first) +
                                  "-" + std::to_string(c.second) + " cross");
    }
    stack.push_back(c);
  }
}

// Largest neighbor of v strictly below `limit` (or at most `limit`).
int largest_neighbor_below(const AdjacencyGraph& g, int v, int limit, bool inclusive) {
  const auto nb = g.neighbors(v);
  auto it = inclusive ? std::upper_bound(nb.begin(), nb.end(), limit) : std::lower_bound(nb.begin(), nb.end(), limit);
  if (it == nb.begin()) throw std::logic_error("face walk found no neighbor");
  return *(it - 1);
}

// Walks the face on the inner side of edge (a, b), a < b.
std::vector<int> face_vertices(const AdjacencyGraph& g, int a, int b) {
  std::vector<int> face{a};
  int v = largest_neighbor_below(g, a, b, false);
  face.push_back(v);
  while (v != b) {
    v = largest_neighbor_below(g, v, b, true);
    face.push_back(v);
  }
  return face;
}

template <typename Visit>
void walk_faces(const Dissection& d, Visit&& visit) {
  // Explicit stack: (a, b) edges whose inner face is still to be visited.
  std::vector<std::pair<int, int>> stack{{0, d.n() - 1}};
  while (!stack.empty()) {
    const auto [a, b] = stack.back();
    stack.pop_back();
    auto face = face_vertices(d.graph(), a, b);
    for (std::size_t i = face.size() - 1; i-- > 0;) {
      if (face[i + 1] - face[i] > 1) stack.emplace_back(face[i], face[i + 1]);
    }
    visit(std::move(face));
  }
}

}  // namespace

Dissection::Dissection(int n, std::vector<Chord> chords)
    : n_(n), chords_(std::move(chords)), graph_(polygon_graph(n_, chords_)) {}

Dissection Dissection::from_chords(int n, std::vector<Chord> chords) {
  if (n < 3) throw std::invalid_argument("a polygon needs at least 3 vertices");
  for (auto& [a, b] : chords) {
    if (a > b) std::swap(a, b);
    if (a < 0 || b >= n) throw std::invalid_argument("chord endpoint out of range");
    if (a == b) throw std::invalid_argument("degenerate chord");
    if (is_side(n, a, b)) throw std::invalid_argument("chord coincides with a polygon side");
  }
  std::sort(chords.begin(), chords.end(), [](const Chord& x, const Chord& y) {
    return x.first != y.first ? x.first < y.first : x.second > y.second;
  });
  if (std::adjacent_find(chords.begin(), chords.end()) != chords.end()) {
    throw std::invalid_argument("repeated chord");
  }
  check_non_crossing(chords);
  std::sort(chords.begin(), chords.end());
  return Dissection(n, std::move(chords));
}

Dissection Dissection::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  int n = 0;
  if (!(in >> n)) throw std::invalid_argument("missing polygon size");
  std::string rest, line;
  while (std::getline(in, line)) rest += line;
  std::vector<Chord> chords;
  std::istringstream items(rest);
  std::string item;
  while (std::getline(items, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char ch) { return std::isspace(ch); }),
               item.end());
    if (item.empty()) continue;
    const auto dash = item.find('-');
    if (dash == std::string::npos) throw std::invalid_argument("malformed chord '" + item + "'");
    try {
      chords.emplace_back(std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1)));
    } catch (const std::logic_error&) {
      throw std::invalid_argument("malformed chord '" + item + "'");
    }
  }
  return from_chords(n, std::move(chords));
}

std::string Dissection::to_string() const {
  std::string out = std::to_string(n_) + "\n";
  for (std::size_t i = 0; i < chords_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(chords_[i].first) + "-" + std::to_string(chords_[i].second);
  }
  out += '\n';
  return out;
}

Dissection from_tree(const PlaneTree& tree) {
  if (tree.has_unary_vertex()) throw std::invalid_argument("from_tree: tree has a unary vertex");
  if (tree.leaf_count() < 2) throw std::invalid_argument("from_tree: tree needs at least 2 leaves");
  const int size = tree.size();
  const int n = tree.leaf_count() + 1;
  // first/last leaf index (1-based) under every vertex.
  std::vector<int> first(size), last(size);
  int next_leaf = 1;
  for (int v = 0; v < size; ++v) {
    if (tree.is_leaf(v)) first[v] = last[v] = next_leaf++;
  }
  for (int v = size - 1; v >= 0; --v) {
    if (tree.is_leaf(v)) continue;
    const auto ch = tree.children(v);
    first[v] = first[ch.front()];
    last[v] = last[ch.back()];
  }
  std::vector<Chord> chords;
  chords.reserve(size - n + 1);
  for (int v = 1; v < size; ++v) {
    if (!tree.is_leaf(v)) chords.emplace_back(first[v] - 1, last[v]);
  }
  std::sort(chords.begin(), chords.end());
  return Dissection::from_chords(n, std::move(chords));
}

PlaneTree to_tree(const Dissection& d) {
  // Preorder of faces with their sides interleaved in order.
  std::vector<int> degrees;
  degrees.reserve(2 * d.n());
  std::vector<std::pair<int, int>> stack{{0, d.n() - 1}};
  // Encoded as: (a, b) with b - a == 1 a side, otherwise a face to open.
  while (!stack.empty()) {
    const auto [a, b] = stack.back();
    stack.pop_back();
    if (b - a == 1) {
      degrees.push_back(0);
      continue;
    }
    const auto face = face_vertices(d.graph(), a, b);
    degrees.push_back(static_cast<int>(face.size()) - 1);
    for (std::size_t i = face.size() - 1; i-- > 0;) stack.emplace_back(face[i], face[i + 1]);
  }
  return PlaneTree::from_degrees(std::move(degrees), true);
}

std::vector<int> FaceSet::degrees() const {
  std::vector<int> out;
  out.reserve(faces.size());
  for (const auto& f : faces) out.push_back(static_cast<int>(f.size()));
  return out;
}

FaceSet faces(const Dissection& d) {
  FaceSet out;
  walk_faces(d, [&](std::vector<int> face) { out.faces.push_back(std::move(face)); });
  return out;
}

double boltzmann_weight(const Dissection& d, const OffspringDistribution& mu) {
  double w = 1.0;
  walk_faces(d, [&](const std::vector<int>& face) { w *= mu.prob(static_cast<int>(face.size()) - 1); });
  return w;
}

double log_boltzmann_weight(const Dissection& d, const OffspringDistribution& mu) {
  double w = 0.0;
  walk_faces(d, [&](const std::vector<int>& face) {
    const double p = mu.prob(static_cast<int>(face.size()) - 1);
    w += p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity();
  });
  return w;
}

double partition_function(int n, const OffspringDistribution& mu) {
  if (n < 3 || n > 12) throw std::invalid_argument("partition_function supports 3 <= n <= 12");
  double z = 0.0;
  for (const auto& tree : enumerate_no_unary_trees(n - 1)) {
    double w = 1.0;
    for (int v = 0; v < tree.size(); ++v) {
      if (!tree.is_leaf(v)) w *= mu.prob(tree.degree(v));
    }
    z += w;
  }
  return z;
}

std::vector<int> bfs_distances(const Dissection& d, int v) { return bfs_distances(d.graph(), v); }
std::vector<std::vector<int>> distance_matrix(const Dissection& d) { return distance_matrix(d.graph()); }
int diameter(const Dissection& d) { return graph_diameter(d.graph()); }

int radius(const Dissection& d) {
  const auto dist = bfs_distances(d.graph(), 0);
  return *std::max_element(dist.begin(), dist.end());
}

BoltzmannSample sample_boltzmann(const OffspringDistribution& mu, int n, Rng& rng, std::uint64_t attempt_cap) {
  if (n < 3) throw std::invalid_argument("sample_boltzmann: n must be >= 3");
  if (!mu.dissection_mode()) throw std::invalid_argument("sample_boltzmann needs a dissection-mode law");
  auto conditioned = sample_conditioned_leaves(mu, n - 1, rng, attempt_cap);
  auto dissection = from_tree(conditioned.tree);
  return {std::move(dissection), std::move(conditioned.tree), conditioned.attempts};
}

std::vector<Dissection> enumerate_dissections(int n) {
  if (n < 3 || n > 12) throw std::invalid_argument("enumerate_dissections supports 3 <= n <= 12");
  std::vector<Dissection> out;
  for (const auto& tree : enumerate_no_unary_trees(n - 1)) out.push_back(from_tree(tree));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Dissection> enumerate_dissections_direct(int n) {
  if (n < 3 || n > 10) throw std::invalid_argument("enumerate_dissections_direct supports 3 <= n <= 10");
  std::vector<Chord> diagonals;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 2; b < n; ++b) {
      if (!is_side(n, a, b)) diagonals.emplace_back(a, b);
    }
  }
  auto crosses = [](const Chord& x, const Chord& y) {
    return (x.first < y.first && y.first < x.second && x.second < y.second) ||
           (y.first < x.first && x.first < y.second && y.second < x.second);
  };
  std::vector<Dissection> out;
  std::vector<Chord> chosen;
  auto search = [&](auto&& self, std::size_t from) -> void {
    out.push_back(Dissection::from_chords(n, chosen));
    for (std::size_t i = from; i < diagonals.size(); ++i) {
      const auto& c = diagonals[i];
      if (std::any_of(chosen.begin(), chosen.end(), [&](const Chord& x) { return crosses(x, c); })) continue;
      chosen.push_back(c);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  search(search, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace dissectree
