#pragma once

#include <map>
#include <optional>
#include <set>
#include <utility>
#include <variant>
#include <vector>

#include "dissectree/rng.hpp"

namespace dissectree {

/// Geometric progression of masses: value start + j*step carries weight
/// first_weight * ratio^j for every j >= 0.
struct GeometricTail {
  int start = 0;
  int step = 1;
  double first_weight = 0.0;
  double ratio = 0.0;

  bool operator==(const GeometricTail&) const = default;
};

/// Unnormalized nonnegative weights (w_i), e.g. Boltzmann face weights.
/// Unlike a probability law, a tail ratio >= 1 is allowed here.
struct WeightSequence {
  std::map<int, double> atoms;
  std::optional<GeometricTail> tail;
};

/// Set of admissible face degrees A, a subset of {3, 4, ...}.
struct FaceDegreeProgression {
  int offset = 3;
  int step = 1;
  std::optional<int> last;  // unset means unbounded
};
using FaceDegreeSet = std::variant<std::set<int>, FaceDegreeProgression>;

/// Critical offspring law on Z_+ with exact geometric tail.
///
/// Masses are atoms plus an optional GeometricTail (the two add up where they
/// overlap). All moments, parity sums and tail sums are computed in closed
/// form, so infinite-support laws stay critical to machine precision.
/// Immutable after construction.
class OffspringDistribution {
 public:
  /// Validates nonnegativity, total mass 1 and mean 1 (both within 1e-12).
  /// dissection_mode additionally requires zero mass at 1.
  static OffspringDistribution create(std::map<int, double> atoms,
                                      std::optional<GeometricTail> tail,
                                      bool dissection_mode);

  double prob(int k) const;
  /// Sum of prob(i) over i >= k.
  double tail_sum(int k) const;

  double total_mass() const { return mass_; }
  double mean() const { return mean_; }
  double variance() const { return variance_; }
  double mu0() const { return mu0_; }
  /// mu_0 + mu_2 + mu_4 + ...
  double even_mass() const { return even_mass_; }
  /// mu_2 + mu_4 + ...
  double positive_even_mass() const { return even_mass_ - mu0_; }
  /// mu_1 + mu_3 + ...
  double odd_mass() const { return odd_mass_; }

  bool dissection_mode() const { return dissection_mode_; }
  const std::map<int, double>& atoms() const { return atoms_; }
  const std::optional<GeometricTail>& tail() const { return tail_; }

  /// Largest k with prob(k) > 0, or nullopt for infinite support.
  std::optional<int> max_support() const;
  /// Smallest K such that tail_sum(K) < eps (finite support: max_support+1).
  int effective_support(double eps) const;

  /// Inverse-CDF draw from the law; the tail index is drawn exactly.
  int sample(Rng& rng) const;
  /// Draw C from the size-biased law k*mu_k.
  int sample_size_biased(Rng& rng) const;

  bool operator==(const OffspringDistribution& other) const;

 private:
  OffspringDistribution() = default;
  void compute_moments();

  std::map<int, double> atoms_;
  std::optional<GeometricTail> tail_;
  bool dissection_mode_ = false;

  std::vector<std::pair<int, double>> atom_list_;
  std::vector<std::pair<int, double>> biased_atom_list_;
  double tail_mass_ = 0.0;
  double biased_geo_mass_ = 0.0;  // start * tail mass
  double biased_nb_mass_ = 0.0;   // step * sum_j j w q^j
  double mass_ = 0.0, mean_ = 0.0, variance_ = 0.0;
  double mu0_ = 0.0, even_mass_ = 0.0, odd_mass_ = 0.0;
};

/// Spine data of a size-biased vertex: C children, spine through child V.
struct SpineStep {
  int children = 1;
  int spine_child = 1;  // 1-based, uniform on 1..children
};

int sample_offspring(const OffspringDistribution& mu, Rng& rng);
SpineStep sample_spine_step(const OffspringDistribution& mu, Rng& rng);

OffspringDistribution uniform_dissection();
OffspringDistribution p_angulation(int p);

/// Root lambda > 0 of sum_{i>=2} i lambda^{i-1} w_i = 1, by bisection.
/// Throws std::domain_error ("not normalizable") when no root exists.
double critical_root(const WeightSequence& weights);
/// nu_0 = 1 - sum lambda^{i-1} w_i, nu_1 = 0, nu_i = lambda^{i-1} w_i.
OffspringDistribution normalize_to_critical(const WeightSequence& weights);

/// r_A in (0,1) with sum_{i in A-1} i r^{i-1} = 1.
double constrained_root(const FaceDegreeSet& faces);
/// nu_A: uniform measure on dissections with face degrees in A.
OffspringDistribution constrained(const FaceDegreeSet& faces);

struct ScalingConstants {
  double c_tree = 0.0;
  double c_geo = 0.0;
  double c = 0.0;
  double c_loop = 0.0;
  double c_loopbar = 0.0;
};

ScalingConstants scaling_constants(const OffspringDistribution& mu);

/// c_geo as the stationary mean step of the geodesic chain, summed from the
/// exact one-step laws. Independent of the closed form in scaling_constants.
double c_geo_series(const OffspringDistribution& mu, double tolerance = 1e-12);

}  // namespace dissectree
