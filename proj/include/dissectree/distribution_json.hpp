#pragma once

#include <json.hpp>
#include <string_view>

#include "dissectree/offspring.hpp"

namespace dissectree {

/// Builds a law from a descriptor such as
///   {"kind": "uniform_dissection"}
///   {"kind": "p_angulation", "p": 4}
///   {"kind": "constrained", "A": {"set": [3, 5]}}
///   {"kind": "constrained", "A": {"progression": {"offset": 4, "step": 2, "unbounded": true}}}
///   {"kind": "custom", "weights": {"0": 0.5, "2": 0.5}}
/// A custom law may add "tail": {"start", "step", "first_weight", "ratio"},
/// "normalize": true (treat weights i >= 2 as Boltzmann face weights) and
/// "dissection_mode" (default: true when nothing sits at 1).
OffspringDistribution distribution_from_json(const nlohmann::json& j);

/// Accepts inline JSON text or a path to a JSON file.
OffspringDistribution distribution_from_argument(std::string_view text_or_path);

/// Custom descriptor reproducing `mu` exactly.
nlohmann::json distribution_to_json(const OffspringDistribution& mu);

}  // namespace dissectree
