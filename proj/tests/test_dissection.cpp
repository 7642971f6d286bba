#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "dissectree/dissection.hpp"
#include "oracles.hpp"

using namespace dissectree;
using doctest::Approx;

namespace {

PlaneTree T(const char* s) { return PlaneTree::parse(s); }

// Floyd-Warshall over the polygon sides and chords.
std::vector<std::vector<int>> floyd(const Dissection& d) {
  const int n = d.n();
  const int inf = 1 << 20;
  std::vector<std::vector<int>> m(n, std::vector<int>(n, inf));
  for (int v = 0; v < n; ++v) {
    m[v][v] = 0;
    m[v][(v + 1) % n] = m[(v + 1) % n][v] = 1;
  }
  for (auto [a, b] : d.chords()) m[a][b] = m[b][a] = 1;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) m[i][j] = std::min(m[i][j], m[i][k] + m[k][j]);
    }
  }
  return m;
}

}  // namespace

TEST_CASE("chord validation") {
  CHECK_NOTHROW(Dissection::from_chords(4, {{0, 2}}));
  CHECK_THROWS_AS(Dissection::from_chords(4, {{0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Dissection::from_chords(4, {{0, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(Dissection::from_chords(4, {{0, 2}, {1, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(Dissection::from_chords(5, {{0, 2}, {2, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Dissection::from_chords(2, {}), std::invalid_argument);
  CHECK_THROWS_AS(Dissection::from_chords(6, {{1, 4}, {0, 2}}), std::invalid_argument);
  CHECK_NOTHROW(Dissection::from_chords(6, {{0, 2}, {2, 4}, {0, 4}}));
}

TEST_CASE("serialization round trip") {
  const auto d = Dissection::from_chords(6, {{2, 4}, {0, 4}, {0, 2}});
  CHECK(d.to_string() == "6\n0-2,0-4,2-4\n");
  CHECK(Dissection::parse(d.to_string()) == d);
  CHECK(Dissection::parse("3\n\n").chords().empty());
  CHECK_THROWS_AS(Dissection::parse("5\n0+2\n"), std::invalid_argument);
}

TEST_CASE("duality on small trees") {
  const auto tri = from_tree(T("2 0 0"));
  CHECK(tri.n() == 3);
  CHECK(tri.chords().empty());
  CHECK(from_tree(T("3 0 0 0")).chords().empty());
  CHECK(from_tree(T("3 0 0 0")).n() == 4);
  const auto left = from_tree(T("2 0 2 0 0"));
  const auto right = from_tree(T("2 2 0 0 0"));
  CHECK(left.n() == 4);
  CHECK(right.n() == 4);
  CHECK(left.chords().size() == 1);
  CHECK(right.chords().size() == 1);
  CHECK(left != right);
  const std::set<std::vector<Chord>> both{left.chords(), right.chords()};
  CHECK(both == std::set<std::vector<Chord>>{{{0, 2}}, {{1, 3}}});
  CHECK(to_tree(tri) == T("2 0 0"));
  CHECK(to_tree(Dissection::from_chords(4, {})) == T("3 0 0 0"));
  CHECK_THROWS_AS(from_tree(T("1 2 0 0")), std::invalid_argument);
  CHECK_THROWS_AS(from_tree(T("0")), std::invalid_argument);
}

TEST_CASE("round trip exhaustive and on samples") {
  for (int leaves = 2; leaves <= 7; ++leaves) {
    for (const auto& t : enumerate_no_unary_trees(leaves)) CHECK(to_tree(from_tree(t)) == t);
  }
  auto rng = make_stream(1, 0, 0);
  const auto mu = uniform_dissection();
  for (int leaves : {50, 200}) {
    for (int i = 0; i < 1000; ++i) {
      const auto t = sample_conditioned_leaves(mu, leaves, rng).tree;
      const auto d = from_tree(t);
      REQUIRE(to_tree(d) == t);
    }
  }
}

TEST_CASE("two enumerations agree with the Schroeder counts") {
  const auto s = oracle::little_schroeder(10);
  for (int n = 3; n <= 9; ++n) {
    const auto via_trees = enumerate_dissections(n);
    const auto direct = enumerate_dissections_direct(n);
    CHECK(static_cast<long long>(direct.size()) == s[n - 1]);
    CHECK(via_trees == direct);
  }
  CHECK_THROWS_AS(enumerate_dissections_direct(11), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_dissections(13), std::invalid_argument);
}

TEST_CASE("faces and weights") {
  const auto mu = uniform_dissection();
  const auto tri = Dissection::from_chords(3, {});
  CHECK(boltzmann_weight(tri, p_angulation(3)) == Approx(0.5));
  CHECK(boltzmann_weight(tri, mu) == Approx(mu.prob(2)));
  const double r = (2.0 - std::sqrt(2.0)) / 2.0;
  CHECK(boltzmann_weight(Dissection::from_chords(4, {}), mu) == Approx(r * r).epsilon(1e-14));
  CHECK(std::exp(log_boltzmann_weight(Dissection::from_chords(4, {}), mu)) == Approx(r * r).epsilon(1e-14));

  for (int n = 3; n <= 8; ++n) {
    for (const auto& d : enumerate_dissections(n)) {
      const auto f = faces(d);
      const auto deg = f.degrees();
      int total = 0;
      for (int x : deg) total += x;
      CHECK(total == n + 2 * static_cast<int>(d.chords().size()));
      CHECK(f.faces.size() == d.chords().size() + 1);
      CHECK(*std::min_element(deg.begin(), deg.end()) >= 3);
      // Each inner face is a vertex of the dual tree with deg - 1 children.
      const auto t = to_tree(d);
      std::vector<int> internal;
      for (int v = 0; v < t.size(); ++v) {
        if (!t.is_leaf(v)) internal.push_back(t.degree(v) + 1);
      }
      CHECK(internal == deg);
    }
  }
  // Uniform law is flat: every dissection of P_5 has probability 1/11.
  const double z = partition_function(5, mu);
  for (const auto& d : enumerate_dissections(5)) CHECK(boltzmann_weight(d, mu) / z == Approx(1.0 / 11.0));
  CHECK_THROWS_AS(partition_function(13, mu), std::invalid_argument);
  double direct = 0.0;
  for (const auto& d : enumerate_dissections_direct(7)) direct += boltzmann_weight(d, mu);
  CHECK(partition_function(7, mu) == Approx(direct).epsilon(1e-12));
}

TEST_CASE("graph metric") {
  const auto tri = Dissection::from_chords(3, {});
  CHECK(diameter(tri) == 1);
  const auto sq = Dissection::from_chords(4, {});
  CHECK(bfs_distances(sq, 0)[2] == 2);
  CHECK(diameter(sq) == 2);
  const auto hex = Dissection::from_chords(6, {{0, 2}, {2, 4}, {0, 4}});
  CHECK(bfs_distances(hex, 1)[3] == 2);
  CHECK(diameter(hex) == 2);
  CHECK(radius(hex) == 2);
  auto rng = make_stream(2, 0, 0);
  for (int i = 0; i < 30; ++i) {
    const auto d = sample_boltzmann(uniform_dissection(), 5 + i, rng).dissection;
    const auto fw = floyd(d);
    CHECK(distance_matrix(d) == fw);
    int best = 0;
    for (const auto& row : fw) best = std::max(best, *std::max_element(row.begin(), row.end()));
    CHECK(diameter(d) == best);
    CHECK(radius(d) == *std::max_element(fw[0].begin(), fw[0].end()));
  }
}

TEST_CASE("Boltzmann sampler laws") {
  auto rng = make_stream(3, 0, 0);
  for (int i = 0; i < 20; ++i) CHECK(sample_boltzmann(uniform_dissection(), 3, rng).dissection.chords().empty());
  const int total = 100000;
  for (int n : {4, 5, 6}) {
    const auto mu = p_angulation(3);
    const double z = partition_function(n, mu);
    std::map<std::string, double> probs;
    for (const auto& d : enumerate_dissections_direct(n)) {
      const double w = boltzmann_weight(d, mu);
      if (w > 0) probs[d.to_string()] = w / z;
    }
    std::map<std::string, int> seen;
    for (int i = 0; i < total; ++i) ++seen[sample_boltzmann(mu, n, rng).dissection.to_string()];
    CHECK(seen.size() == probs.size());
    CHECK(oracle::chi2_statistic(seen, probs, total) < oracle::chi2_critical_1pct(int(probs.size()) - 1));
  }
  // Catalan: 5 triangulations of the pentagon.
  std::set<std::string> shapes;
  for (int i = 0; i < 2000; ++i) shapes.insert(sample_boltzmann(p_angulation(3), 5, rng).dissection.to_string());
  CHECK(shapes.size() == 5);
}

TEST_CASE("rotation invariance of the uniform law") {
  auto rng = make_stream(4, 0, 0);
  const int trials = 10000;
  std::map<int, int> a, b;
  for (int i = 0; i < trials; ++i) {
    const auto d = sample_boltzmann(uniform_dissection(), 30, rng).dissection;
    ++a[bfs_distances(d, 0)[15]];
  }
  for (int i = 0; i < trials; ++i) {
    const auto d = sample_boltzmann(uniform_dissection(), 30, rng).dissection;
    ++b[bfs_distances(d, 5)[20]];
  }
  // Two-sample chi-square on the pooled categories.
  std::set<int> keys;
  for (auto& [k, v] : a) keys.insert(k);
  for (auto& [k, v] : b) keys.insert(k);
  double stat = 0.0;
  int dof = -1;
  for (int k : keys) {
    const double x = a[k], y = b[k];
    if (x + y < 10) continue;
    stat += (x - y) * (x - y) / (x + y);
    ++dof;
  }
  REQUIRE(dof >= 1);
  CHECK(stat < oracle::chi2_critical_1pct(dof));
}
