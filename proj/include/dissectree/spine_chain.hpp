#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "dissectree/offspring.hpp"
#include "dissectree/rng.hpp"

namespace dissectree {

/// Driving state of the geodesic chain: Determined (left or right) or
/// Undetermined.
enum class Driving { D, U };

struct ChainState {
  int x = 0;
  Driving p = Driving::D;

  bool operator==(const ChainState&) const = default;
};

/// One transition: G children left of the spine, D children right of it.
ChainState chain_step(Driving p, int g, int d);

/// Law of (X_{n+1}, P_{n+1}) given P_n: to_d[i] = P(X = i, P = D | source),
/// to_u[i] likewise. Entries are exact; rows stop where the remaining mass
/// certified by the offspring tail is below `cutoff`.
struct TransitionRow {
  std::vector<double> to_d;
  std::vector<double> to_u;

  double total() const;
};

TransitionRow joint_step_law(const OffspringDistribution& mu, Driving source, double cutoff = 1e-15);

/// Two-step law P(X_{n+2} = i, P_{n+2} | P_n) from the closed-form products.
TransitionRow two_step_law(const OffspringDistribution& mu, Driving source, double cutoff = 1e-15);

/// Rows indexed [from][to] with D = 0, U = 1.
using DrivingMatrix = std::array<std::array<double, 2>, 2>;
DrivingMatrix driving_matrix(const OffspringDistribution& mu);

/// Stationary law (pi(D), pi(U)); (1, 0) when mu_{2N} = 0.
std::array<double, 2> stationary(const OffspringDistribution& mu);

/// S_n = X_0 + ... + X_n along the spine of Kesten's tree, X_0 = 0,
/// P_0 = D. Step m consumes the children of spine vertex W_m (m = 1..n).
struct Trajectory {
  std::int64_t steps = 0;
  std::int64_t s = 0;
  std::int64_t occupation_d = 0;  // count of P_1..P_n equal to D
  std::int64_t occupation_u = 0;
};

Trajectory simulate(const OffspringDistribution& mu, std::int64_t steps, Rng& rng);

/// Both sides of the many-to-one identity for F = 1{H(u) = m} at depth j of
/// the planted tree: tree_side[m] by exhaustive enumeration of GW trees cut
/// at depth j, chain_side[m] = P(S_{j-1} = m) by exact convolution.
struct SpineLawComparison {
  std::vector<double> tree_side;
  std::vector<double> chain_side;
  std::uint64_t configurations = 0;
};

SpineLawComparison spine_H_law_exhaustive(const OffspringDistribution& mu, int depth);

}  // namespace dissectree
