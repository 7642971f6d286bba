#include <doctest.h>

#include <algorithm>

#include "dissectree/dissection.hpp"
#include "dissectree/geodesic.hpp"
#include "dissectree/spine_chain.hpp"

using namespace dissectree;

namespace {

PlaneTree T(const char* s) { return PlaneTree::parse(s); }

// The nine cases written out as a lookup on comparisons.
GeodStep table_step(Position p, int g, int d) {
  if (p == Position::R) {
    if (d < g + 1) return {d, Position::R};
    if (d > g + 1) return {g + 1, Position::L};
    return {d, Position::U};
  }
  if (p == Position::L) {
    if (g < d + 1) return {g, Position::L};
    if (g > d + 1) return {d + 1, Position::R};
    return {g, Position::U};
  }
  if (d < g) return {d, Position::R};
  if (d > g) return {g, Position::L};
  return {d, Position::U};
}

}  // namespace

TEST_CASE("step table examples") {
  for (int d = 0; d < 20; ++d) CHECK(geod_step(Position::L, 0, d) == GeodStep{0, Position::L});
  CHECK(geod_step(Position::U, 2, 2) == GeodStep{2, Position::U});
  CHECK(geod_step(Position::R, 1, 3) == GeodStep{2, Position::L});
}

TEST_CASE("step table is total and bounded") {
  for (auto p : {Position::L, Position::R, Position::U}) {
    for (int g = 0; g <= 30; ++g) {
      for (int d = 0; d <= 30; ++d) {
        const auto s = geod_step(p, g, d);
        CHECK(s == table_step(p, g, d));
        CHECK(s.ds >= 0);
        CHECK(s.ds <= std::max(g, d) + 1);
        // Collapsing L and R to D agrees with the chain step.
        if (p != Position::R) {
          const auto c = chain_step(p == Position::U ? Driving::U : Driving::D, g, d);
          CHECK(c.x == s.ds);
          CHECK((c.p == Driving::U) == (s.next == Position::U));
        }
      }
    }
  }
  // R mirrors L: swap g and d.
  for (int g = 0; g <= 30; ++g) {
    for (int d = 0; d <= 30; ++d) {
      const auto r = geod_step(Position::R, g, d);
      const auto l = geod_step(Position::L, d, g);
      CHECK(r.ds == l.ds);
      CHECK((r.next == Position::U) == (l.next == Position::U));
    }
  }
}

TEST_CASE("height on small planted trees") {
  const auto pc = plant(T("2 0 0"));
  CHECK(height_H(pc, 1) == 0);
  CHECK(height_H(pc, 2) == 1);
  CHECK(height_H(plant(T("3 0 0 0")), 2) == 1);
  CHECK_THROWS_AS(height_H(pc, 0), std::out_of_range);
}

TEST_CASE("general height") {
  const auto t = T("3 2 0 0 0 2 0 0");
  CHECK(height_H_general(t, 0) == 0);
  for (int c : t.children(0)) CHECK(height_H_general(t, c) == 0);
  CHECK_THROWS_AS(height_H_general(t, 42), std::out_of_range);

  auto rng = make_stream(1, 0, 0);
  for (int i = 0; i < 50; ++i) {
    const auto tree = sample_conditioned_leaves(uniform_dissection(), 40, rng).tree;
    const auto planted = plant(tree);
    const auto all = all_heights_H(planted.tree());
    for (int u = 0; u < planted.tree().size(); ++u) {
      // Fold along the full tree equals the fold on the restricted tree.
      CHECK(fold_geod(path_splits(planted.tree(), u)) == height_H_general(planted.tree(), u));
      CHECK(all[u] == height_H_general(planted.tree(), u));
    }
    for (int k = 1; k < planted.leaf_count(); ++k) {
      const int h = height_H(planted, k);
      CHECK(h == all[planted.leaf(k)]);
      int bound = 0;
      for (const auto& s : spine_splits(planted, k)) bound += std::min(s.g, s.d) + 1;
      CHECK(h <= bound);
      // Restricted tree with l_k as target leaf.
      const auto r = restricted_tree(planted.tree(), planted.leaf(k));
      CHECK(fold_geod(path_splits(r.tree, r.target)) == h);
    }
  }
}

TEST_CASE("distance bound on every small dissection") {
  for (int leaves = 2; leaves <= 7; ++leaves) {
    for (const auto& t : enumerate_no_unary_trees(leaves)) CHECK(max_distance_slack(t) <= 1);
  }
  CHECK(max_distance_slack(T("2 0 0")) == 1);
}

TEST_CASE("distance bound on large samples") {
  auto rng = make_stream(2, 0, 0);
  for (int i = 0; i < 100; ++i) {
    const auto tree = sample_boltzmann(uniform_dissection(), 200, rng).tree;
    // Independent per-leaf check against a BFS from vertex 0.
    const auto d = from_tree(tree);
    const auto dist = bfs_distances(d, 0);
    const auto planted = plant(tree);
    for (int k = 1; k < d.n(); ++k) CHECK(std::abs(dist[k] - height_H(planted, k)) <= 1);
    CHECK(max_distance_slack(tree) <= 1);
  }
}
