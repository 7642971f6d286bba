#include "dissectree/plane_tree.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "dissectree/errors.hpp"

namespace dissectree {

PlaneTree PlaneTree::from_degrees(std::vector<int> degrees, bool no_unary) {
  if (degrees.empty()) throw std::invalid_argument("tree encoding is empty");
  std::int64_t pending = 1;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (degrees[i] < 0) throw std::invalid_argument("negative child count in tree encoding");
    if (pending == 0) throw std::invalid_argument("tree encoding has trailing vertices");
    if (no_unary && degrees[i] == 1) throw std::invalid_argument("tree has a vertex with exactly one child");
    pending += degrees[i] - 1;
  }
  if (pending != 0) throw std::invalid_argument("tree encoding is incomplete");

  PlaneTree t;
  const int n = static_cast<int>(degrees.size());
  t.degrees_ = std::move(degrees);
  t.parent_.assign(n, -1);
  t.depth_.assign(n, 0);
  t.child_rank_.assign(n, 0);
  t.subtree_end_.assign(n, 0);
  t.child_offset_.assign(n + 1, 0);

  // Stack of (vertex, children already attached).
  std::vector<std::pair<int, int>> stack;
  stack.reserve(64);
  for (int v = 0; v < n; ++v) {
    if (!stack.empty()) {
      auto& [p, seen] = stack.back();
      t.parent_[v] = p;
      t.child_rank_[v] = ++seen;
      t.depth_[v] = t.depth_[p] + 1;
      if (seen == t.degrees_[p]) stack.pop_back();
    }
    if (t.degrees_[v] > 0) stack.emplace_back(v, 0);
    if (t.degrees_[v] == 0) t.leaves_.push_back(v);
  }

  for (int v = 0; v < n; ++v) t.child_offset_[v + 1] = t.child_offset_[v] + t.degrees_[v];
  t.child_ids_.assign(t.child_offset_[n], 0);
  for (int v = 1; v < n; ++v) {
    const int p = t.parent_[v];
    t.child_ids_[t.child_offset_[p] + t.child_rank_[v] - 1] = v;
  }
  std::vector<int> size(n, 1);
  for (int v = n - 1; v > 0; --v) size[t.parent_[v]] += size[v];
  for (int v = 0; v < n; ++v) t.subtree_end_[v] = v + size[v];
  return t;
}

PlaneTree PlaneTree::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<int> degrees;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(token, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("tree encoding: bad token '" + token + "'");
    }
    if (used != token.size()) throw std::invalid_argument("tree encoding: bad token '" + token + "'");
    degrees.push_back(value);
  }
  return from_degrees(std::move(degrees));
}

std::string PlaneTree::to_string() const {
  std::string out;
  out.reserve(degrees_.size() * 2);
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    if (i) out.push_back(' ');
    out += std::to_string(degrees_[i]);
  }
  return out;
}

std::span<const int> PlaneTree::children(int v) const {
  return {child_ids_.data() + child_offset_[v], static_cast<std::size_t>(degrees_[v])};
}

int PlaneTree::height() const { return *std::max_element(depth_.begin(), depth_.end()); }

bool PlaneTree::has_unary_vertex() const {
  return std::find(degrees_.begin(), degrees_.end(), 1) != degrees_.end();
}

PlantedTree::PlantedTree(PlaneTree tree) : tree_(std::move(tree)) {
  if (tree_.degree(0) != 1) throw std::invalid_argument("planted tree root must have exactly one child");
}

int PlantedTree::leaf(int k) const {
  if (k < 0 || k >= leaf_count()) throw std::out_of_range("leaf index out of range");
  return k == 0 ? 0 : tree_.leaves()[k - 1];
}

PlantedTree plant(const PlaneTree& tree) {
  std::vector<int> degrees;
  degrees.reserve(tree.size() + 1);
  degrees.push_back(1);
  degrees.insert(degrees.end(), tree.degrees().begin(), tree.degrees().end());
  return PlantedTree(PlaneTree::from_degrees(std::move(degrees)));
}

PlaneTree unplant(const PlantedTree& planted) {
  const auto& d = planted.tree().degrees();
  return PlaneTree::from_degrees(std::vector<int>(d.begin() + 1, d.end()));
}

namespace {

// Depth-first generation into `out`. Each pending (not yet generated)
// vertex will contribute at least one leaf and one vertex, so the attempt
// is abandoned as soon as the final counts are certain to exceed a cap.
bool generate_gw(const OffspringDistribution& mu, Rng& rng, std::vector<int>& out, std::int64_t leaf_cap,
                 std::int64_t vertex_cap) {
  out.clear();
  std::int64_t pending = 1;
  std::int64_t leaves = 0;
  while (pending > 0) {
    const int k = mu.sample(rng);
    out.push_back(k);
    pending += k - 1;
    if (k == 0) ++leaves;
    if (leaf_cap >= 0 && leaves + pending > leaf_cap) return false;
    if (vertex_cap >= 0 && static_cast<std::int64_t>(out.size()) + pending > vertex_cap) return false;
  }
  return true;
}

}  // namespace

std::optional<PlaneTree> sample_gw(const OffspringDistribution& mu, Rng& rng, std::optional<int> leaf_cap) {
  std::vector<int> degrees;
  if (!generate_gw(mu, rng, degrees, leaf_cap ? *leaf_cap : -1, -1)) return std::nullopt;
  return PlaneTree::from_degrees(std::move(degrees));
}

bool gw_attempt_hits_leaf_count(const OffspringDistribution& mu, int n_leaves, Rng& rng) {
  thread_local std::vector<int> buffer;
  if (!generate_gw(mu, rng, buffer, n_leaves, -1)) return false;
  return std::count(buffer.begin(), buffer.end(), 0) == n_leaves;
}

ConditionedTree sample_conditioned_leaves(const OffspringDistribution& mu, int n_leaves, Rng& rng,
                                          std::uint64_t attempt_cap) {
  if (n_leaves < 1) throw std::invalid_argument("leaf count must be positive");
  std::vector<int> buffer;
  buffer.reserve(2 * static_cast<std::size_t>(n_leaves));
  for (std::uint64_t attempt = 1; attempt <= attempt_cap; ++attempt) {
    if (!generate_gw(mu, rng, buffer, n_leaves, -1)) continue;
    if (std::count(buffer.begin(), buffer.end(), 0) != n_leaves) continue;
    return {PlaneTree::from_degrees(buffer), attempt};
  }
  throw SamplerCapExhausted("no GW tree with " + std::to_string(n_leaves) + " leaves after " +
                                std::to_string(attempt_cap) + " attempts (is the leaf count reachable?)",
                            attempt_cap);
}

ConditionedTree sample_conditioned_vertices(const OffspringDistribution& mu, int n, Rng& rng,
                                            std::uint64_t attempt_cap) {
  if (n < 1) throw std::invalid_argument("vertex count must be positive");
  std::vector<int> buffer;
  buffer.reserve(static_cast<std::size_t>(n));
  for (std::uint64_t attempt = 1; attempt <= attempt_cap; ++attempt) {
    if (!generate_gw(mu, rng, buffer, -1, n)) continue;
    if (static_cast<int>(buffer.size()) != n) continue;
    return {PlaneTree::from_degrees(buffer), attempt};
  }
  throw SamplerCapExhausted("no GW tree with " + std::to_string(n) + " vertices after " +
                                std::to_string(attempt_cap) + " attempts (is the size reachable?)",
                            attempt_cap);
}

int tree_distance(const PlaneTree& tree, int u, int v) {
  if (u < 0 || v < 0 || u >= tree.size() || v >= tree.size()) throw std::out_of_range("vertex index out of range");
  int d = 0;
  while (tree.depth(u) > tree.depth(v)) u = tree.parent(u), ++d;
  while (tree.depth(v) > tree.depth(u)) v = tree.parent(v), ++d;
  while (u != v) u = tree.parent(u), v = tree.parent(v), d += 2;
  return d;
}

namespace {

std::pair<int, int> farthest_from(const PlaneTree& tree, int source, std::vector<int>& dist,
                                  std::vector<int>& queue) {
  std::fill(dist.begin(), dist.end(), -1);
  queue.clear();
  queue.push_back(source);
  dist[source] = 0;
  int best = source;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int v = queue[head];
    if (dist[v] > dist[best]) best = v;
    auto visit = [&](int w) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    };
    if (v != 0) visit(tree.parent(v));
    for (int c : tree.children(v)) visit(c);
  }
  return {best, dist[best]};
}

}  // namespace

int tree_diameter(const PlaneTree& tree) {
  std::vector<int> dist(tree.size()), queue;
  queue.reserve(tree.size());
  const auto [far, ignored] = farthest_from(tree, 0, dist, queue);
  (void)ignored;
  return farthest_from(tree, far, dist, queue).second;
}

std::vector<int> heights(const PlaneTree& tree) { return tree.depths(); }

std::vector<Split> path_splits(const PlaneTree& tree, int u) {
  if (u < 0 || u >= tree.size()) throw std::out_of_range("vertex index out of range");
  std::vector<int> path;
  for (int v = u; v != -1; v = tree.parent(v)) path.push_back(v);
  std::reverse(path.begin(), path.end());
  std::vector<Split> splits;
  if (path.size() < 3) return splits;
  splits.reserve(path.size() - 2);
  for (std::size_t i = 1; i + 1 < path.size(); ++i) {
    const int rank = tree.child_rank(path[i + 1]);
    splits.push_back({rank - 1, tree.degree(path[i]) - rank});
  }
  return splits;
}

std::vector<Split> spine_splits(const PlantedTree& planted, int k) {
  if (k < 1 || k >= planted.leaf_count()) throw std::out_of_range("spine_splits: leaf index must be in 1..n-1");
  return path_splits(planted.tree(), planted.leaf(k));
}

RestrictedTree restricted_tree(const PlaneTree& tree, int u) {
  if (u < 0 || u >= tree.size()) throw std::out_of_range("vertex index out of range");
  std::vector<int> path;
  for (int v = u; v != -1; v = tree.parent(v)) path.push_back(v);
  std::reverse(path.begin(), path.end());

  std::vector<int> degrees;
  RestrictedTree out{PlaneTree::from_degrees({0}), 0};
  int trailing = 0;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const int w = path[i];
    degrees.push_back(tree.degree(w));
    if (i + 1 == path.size()) {
      out.target = static_cast<int>(degrees.size()) - 1;
      degrees.insert(degrees.end(), tree.degree(w), 0);
      break;
    }
    const int rank = tree.child_rank(path[i + 1]);
    degrees.insert(degrees.end(), rank - 1, 0);
    trailing += tree.degree(w) - rank;
    // Right siblings of the path are emitted after the deeper part; since they
    // are all leaves, appending them in one block at the end keeps preorder.
  }
  degrees.insert(degrees.end(), trailing, 0);
  out.tree = PlaneTree::from_degrees(std::move(degrees));
  return out;
}

namespace {

using Encodings = std::vector<std::vector<int>>;

const Encodings& no_unary_encodings(int leaves, std::map<int, Encodings>& memo) {
  if (auto it = memo.find(leaves); it != memo.end()) return it->second;
  Encodings result;
  if (leaves == 1) {
    result.push_back({0});
  } else {
    // Root with k >= 2 children whose leaf counts form a composition of `leaves`.
    std::vector<int> parts;
    std::function<void(int)> compose = [&](int remaining) {
      if (remaining == 0) {
        if (parts.size() < 2) return;
        std::vector<const Encodings*> pools;
        for (int p : parts) pools.push_back(&no_unary_encodings(p, memo));
        std::vector<std::size_t> pick(parts.size(), 0);
        while (true) {
          std::vector<int> enc{static_cast<int>(parts.size())};
          for (std::size_t c = 0; c < parts.size(); ++c) {
            const auto& sub = (*pools[c])[pick[c]];
            enc.insert(enc.end(), sub.begin(), sub.end());
          }
          result.push_back(std::move(enc));
          std::size_t c = parts.size();
          while (c > 0) {
            --c;
            if (++pick[c] < pools[c]->size()) break;
            pick[c] = 0;
            if (c == 0) return;
          }
        }
      }
      for (int p = 1; p <= remaining; ++p) {
        if (p == leaves) continue;  // a single child would be unary
        parts.push_back(p);
        compose(remaining - p);
        parts.pop_back();
      }
    };
    compose(leaves);
    std::sort(result.begin(), result.end());
  }
  return memo.emplace(leaves, std::move(result)).first->second;
}

}  // namespace

std::vector<PlaneTree> enumerate_no_unary_trees(int n_leaves) {
  if (n_leaves < 1) throw std::invalid_argument("leaf count must be positive");
  if (n_leaves > 11) throw std::invalid_argument("exhaustive enumeration limited to 11 leaves");
  std::map<int, Encodings> memo;
  const auto& encodings = no_unary_encodings(n_leaves, memo);
  std::vector<PlaneTree> trees;
  trees.reserve(encodings.size());
  for (const auto& e : encodings) trees.push_back(PlaneTree::from_degrees(e, true));
  return trees;
}

}  // namespace dissectree
