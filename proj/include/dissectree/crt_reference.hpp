#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "dissectree/offspring.hpp"

namespace dissectree {

/// Diameter density series of the Brownian tree, summed over k >= 1 until a
/// term is negligible or k = k_max.
double diameter_density(double x, int k_max = 200, double tol = 1e-16);

/// Right end of the integration range: first grid point past which
/// |diameter_density| stays below 1e-16.
double diameter_density_cutoff();

/// Integral of x^p f_D(x) over (0, cutoff]. p >= 0.
double diam_moment(double p);
/// 2^{-p/2} p (p-1) Gamma(p/2) zeta(p), continuous at p = 1. p > 0.
double radius_moment(double p);
/// 2^{-p/2} Gamma(1 + p/2). p > 0.
double height_u_moment(double p);

enum class Statistic {
  diameter,
  radius,
  height_u,
  tree_diameter,
  distance_slack,
  leaf_deviation,
  loop_diameter,
  loopbar_diameter,
  loop_height_u,
  loopbar_height_u,
};

std::string_view statistic_name(Statistic s);
/// Throws std::invalid_argument on an unknown name.
Statistic parse_statistic(std::string_view name);

/// Limit of E[X^p] / n^{p/2}; nullopt for statistics without a scaling limit.
std::optional<double> predict(const OffspringDistribution& mu, Statistic s, double p = 1.0);

}  // namespace dissectree
