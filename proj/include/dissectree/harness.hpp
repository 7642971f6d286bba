#pragma once

#include <cstdint>
#include <functional>
#include <json.hpp>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dissectree/crt_reference.hpp"
#include "dissectree/dissection.hpp"
#include "dissectree/offspring.hpp"
#include "dissectree/plane_tree.hpp"

namespace dissectree {

/// 95th-percentile bound for the normalized leaf deviation of uniform
/// dissections at n = 1000. Calibrated from simulation, not a derived value.
inline constexpr double kLeafDeviationThreshold = 0.35;
inline constexpr int kLeafDeviationThresholdSize = 1000;

struct ExperimentConfig {
  nlohmann::json distribution = {{"kind", "uniform_dissection"}};
  std::vector<int> sizes;
  int samples = 1;
  std::vector<Statistic> statistics;
  std::uint64_t seed = 0;
  double epsilon = kLeafDeviationThreshold;
  double p = 1.0;
  int threads = 1;
  std::uint64_t attempt_cap = kDefaultAttemptCap;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct StatRow {
  int n = 0;
  Statistic statistic = Statistic::diameter;
  double p = 1.0;
  double mean = 0.0;
  double std_error = 0.0;
  int samples = 0;
  std::optional<double> predicted;
  std::optional<double> ratio;
};

struct SampleValue {
  int n = 0;
  Statistic statistic = Statistic::diameter;
  int trial = 0;
  double value = 0.0;
};

struct SizeFailure {
  int n = 0;
  std::string message;
};

struct StatReport {
  std::vector<StatRow> rows;
  std::vector<SampleValue> values;
  std::vector<SizeFailure> failures;
  /// Fraction of leaf_deviation values at or above the configured epsilon, per size.
  std::vector<std::pair<int, double>> leaf_deviation_exceedance;
  double epsilon = kLeafDeviationThreshold;
};

/// Runs every (size, trial) on its own random stream and aggregates in
/// trial order, so the output does not depend on `threads`.
StatReport run_scaling_experiment(const ExperimentConfig& config);

inline constexpr const char* kReportCsvHeader = "n,statistic,p,mean,stderr,samples,predicted,ratio";

std::string report_csv(const StatReport& report);
nlohmann::json report_json(const StatReport& report);
/// "n,statistic,trial,value" for every sample.
std::string samples_csv(const StatReport& report);

/// Runs body(i) for i in [0, count) on `threads` workers.
void parallel_for(int count, int threads, const std::function<void(int)>& body);

using DistanceOracle = std::function<double(int, int)>;

/// Largest |dA(x1, y1) - dB(x2, y2)| over pairs of pairs in R. Throws
/// std::invalid_argument naming an uncovered point when R is not a
/// correspondence between {0..size_a-1} and {0..size_b-1}.
double distortion(const std::vector<std::pair<int, int>>& relation, int size_a, const DistanceOracle& da,
                  int size_b, const DistanceOracle& db);

/// max over point pairs of |d_d(u, v) - c_geo d_t(u, v)| / max(tree_diameter, sqrt(n)),
/// n being the number of points.
double leaf_deviation_from_distances(const std::vector<std::vector<double>>& d_dissection,
                             const std::vector<std::vector<double>>& d_tree, double c_geo, double tree_diameter);

/// Same for D and its planted dual, pairing polygon vertex k with leaf l_k.
double leaf_deviation(const Dissection& d, const PlantedTree& planted, double c_geo);

struct LeafMetric {
  std::vector<int> leaves;
  /// distances[i][j] between leaves[i] and leaves[j].
  std::vector<std::vector<int>> distances;
};

LeafMetric leaf_metric(const PlaneTree& tree);
/// Largest distance from a vertex to its nearest descendant leaf.
int leaf_proximity(const PlaneTree& tree);

struct AcceptanceProbe {
  std::uint64_t attempts = 0;
  std::uint64_t hits = 0;
  double rate = 0.0;
  double predicted = 0.0;
  double ratio = 0.0;
  double ratio_low = 0.0;  // 95% binomial interval
  double ratio_high = 0.0;
};

/// Rate at which an unconditioned GW tree has exactly n - 1 leaves, against
/// sqrt(mu_0 / (2 pi sigma^2)) n^{-3/2}. Throws on zero acceptances.
AcceptanceProbe acceptance_probe(const OffspringDistribution& mu, int n, std::uint64_t attempts,
                                 std::uint64_t seed, int threads = 1);

}  // namespace dissectree
