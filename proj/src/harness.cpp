#include "dissectree/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "dissectree/distribution_json.hpp"
#include "dissectree/errors.hpp"
#include "dissectree/geodesic.hpp"
#include "dissectree/looptree.hpp"
#include "dissectree/rng.hpp"

namespace dissectree {

using nlohmann::json;

void parallel_for(int count, int threads, const std::function<void(int)>& body) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int i = next++; i < count; i = next++) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
        next = count;
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

namespace {

bool is_loop_statistic(Statistic s) {
  return s == Statistic::loop_diameter || s == Statistic::loopbar_diameter || s == Statistic::loop_height_u ||
         s == Statistic::loopbar_height_u;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (sizes.empty()) throw std::invalid_argument("config: sizes must be nonempty");
  for (int n : sizes) {
    if (n < 3) throw std::invalid_argument("config: every size must be >= 3");
  }
  if (samples < 1) throw std::invalid_argument("config: samples must be >= 1");
  if (statistics.empty()) throw std::invalid_argument("config: statistics must be nonempty");
  if (!(p > 0.0)) throw std::invalid_argument("config: p must be positive");
  if (threads < 1) throw std::invalid_argument("config: threads must be >= 1");
  if (attempt_cap < 1) throw std::invalid_argument("config: attempt_cap must be >= 1");
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  ExperimentConfig c;
  try {
    if (j.contains("distribution")) c.distribution = j.at("distribution");
    c.sizes = j.at("sizes").get<std::vector<int>>();
    c.samples = j.at("samples").get<int>();
    for (const auto& s : j.at("statistics")) c.statistics.push_back(parse_statistic(s.get<std::string>()));
    c.seed = j.value("seed", std::uint64_t{0});
    c.epsilon = j.value("epsilon", kLeafDeviationThreshold);
    c.p = j.value("p", 1.0);
    c.threads = j.value("threads", 1);
    c.attempt_cap = j.value("attempt_cap", kDefaultAttemptCap);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad experiment config: ") + e.what());
  }
  c.validate();
  return c;
}

json ExperimentConfig::to_json() const {
  json stats = json::array();
  for (auto s : statistics) stats.push_back(std::string(statistic_name(s)));
  return {{"distribution", distribution}, {"sizes", sizes},   {"samples", samples},
          {"statistics", stats},          {"seed", seed},     {"epsilon", epsilon},
          {"p", p},                       {"threads", threads}, {"attempt_cap", attempt_cap}};
}

namespace {

// Mean over vertices of d(0, v)^p.
double mean_power(const std::vector<int>& dist, double p) {
  double total = 0.0;
  for (int d : dist) total += std::pow(static_cast<double>(d), p);
  return total / static_cast<double>(dist.size());
}

struct TrialOutcome {
  std::vector<double> values;  // aligned with the requested statistics
  std::string failure;
};

}  // namespace

StatReport run_scaling_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto mu = distribution_from_json(config.distribution);
  const bool needs_dissection = std::any_of(config.statistics.begin(), config.statistics.end(),
                                            [](Statistic s) { return !is_loop_statistic(s); });
  const bool needs_loop =
      std::any_of(config.statistics.begin(), config.statistics.end(), is_loop_statistic);
  const double c_geo = needs_dissection ? scaling_constants(mu).c_geo : 0.0;

  StatReport report;
  report.epsilon = config.epsilon;
  const auto& stats = config.statistics;

  for (std::size_t slot = 0; slot < config.sizes.size(); ++slot) {
    const int n = config.sizes[slot];
    std::vector<TrialOutcome> outcomes(config.samples);

    parallel_for(config.samples, config.threads, [&](int trial) {
      auto& out = outcomes[trial];
      out.values.assign(stats.size(), 0.0);
      try {
        if (needs_dissection) {
          auto rng = make_stream(config.seed, 2 * slot, trial);
          const auto sample = sample_boltzmann(mu, n, rng, config.attempt_cap);
          const auto& d = sample.dissection;
          std::optional<std::vector<int>> from_zero;
          auto dist0 = [&]() -> const std::vector<int>& {
            if (!from_zero) from_zero = bfs_distances(d, 0);
            return *from_zero;
          };
          for (std::size_t i = 0; i < stats.size(); ++i) {
            double v = 0.0;
            switch (stats[i]) {
              case Statistic::diameter:
                v = std::pow(diameter(d), config.p);
                break;
              case Statistic::radius:
                v = std::pow(*std::max_element(dist0().begin(), dist0().end()), config.p);
                break;
              case Statistic::height_u:
                v = mean_power(dist0(), config.p);
                break;
              case Statistic::tree_diameter:
                v = std::pow(tree_diameter(sample.tree), config.p);
                break;
              case Statistic::distance_slack:
                v = max_distance_slack(sample.tree);
                break;
              case Statistic::leaf_deviation:
                v = leaf_deviation(d, plant(sample.tree), c_geo);
                break;
              default:
                continue;
            }
            out.values[i] = v;
          }
        }
        if (needs_loop) {
          auto rng = make_stream(config.seed, 2 * slot + 1, trial);
          const auto tree = sample_conditioned_vertices(mu, n, rng, config.attempt_cap).tree;
          const auto loop = loop_of(tree);
          const auto bar = loopbar_of(tree);
          for (std::size_t i = 0; i < stats.size(); ++i) {
            switch (stats[i]) {
              case Statistic::loop_diameter:
                out.values[i] = std::pow(graph_diameter(loop.graph), config.p);
                break;
              case Statistic::loopbar_diameter:
                out.values[i] = std::pow(graph_diameter(bar.graph), config.p);
                break;
              case Statistic::loop_height_u:
                out.values[i] = mean_power(bfs_distances(loop.graph, loop.vertex_of[0]), config.p);
                break;
              case Statistic::loopbar_height_u: {
                const auto dist = bfs_distances(bar.graph, bar.vertex_of[0]);
                double total = 0.0;
                for (int v : bar.vertex_of) total += std::pow(static_cast<double>(dist[v]), config.p);
                out.values[i] = total / static_cast<double>(bar.vertex_of.size());
                break;
              }
              default:
                break;
            }
          }
        }
      } catch (const SamplerCapExhausted& e) {
        out.failure = e.what();
      }
    });

    const auto failed = std::find_if(outcomes.begin(), outcomes.end(),
                                     [](const TrialOutcome& o) { return !o.failure.empty(); });
    if (failed != outcomes.end()) {
      report.failures.push_back({n, failed->failure});
      continue;
    }

    for (std::size_t i = 0; i < stats.size(); ++i) {
      double sum = 0.0;
      for (int t = 0; t < config.samples; ++t) {
        sum += outcomes[t].values[i];
        report.values.push_back({n, stats[i], t, outcomes[t].values[i]});
      }
      const double count = config.samples;
      const double mean = sum / count;
      double ss = 0.0;
      for (int t = 0; t < config.samples; ++t) {
        const double dev = outcomes[t].values[i] - mean;
        ss += dev * dev;
      }
      StatRow row;
      row.n = n;
      row.statistic = stats[i];
      row.p = config.p;
      row.mean = mean;
      row.std_error = config.samples > 1 ? std::sqrt(ss / (count - 1.0)) / std::sqrt(count) : 0.0;
      row.samples = config.samples;
      if (const auto limit = predict(mu, stats[i], config.p)) {
        row.predicted = *limit * std::pow(static_cast<double>(n), config.p / 2.0);
        row.ratio = mean / *row.predicted;
      }
      if (stats[i] == Statistic::leaf_deviation) {
        int above = 0;
        for (int t = 0; t < config.samples; ++t) above += outcomes[t].values[i] >= config.epsilon;
        report.leaf_deviation_exceedance.emplace_back(n, above / count);
      }
      report.rows.push_back(row);
    }
  }
  return report;
}

namespace {

std::string number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

json optional_number(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

}  // namespace

std::string report_csv(const StatReport& report) {
  std::string out = std::string(kReportCsvHeader) + "\n";
  for (const auto& r : report.rows) {
    out += std::to_string(r.n) + "," + std::string(statistic_name(r.statistic)) + "," + number(r.p) + "," +
           number(r.mean) + "," + number(r.std_error) + "," + std::to_string(r.samples) + "," +
           (r.predicted ? number(*r.predicted) : "") + "," + (r.ratio ? number(*r.ratio) : "") + "\n";
  }
  return out;
}

json report_json(const StatReport& report) {
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"n", r.n},
                    {"statistic", std::string(statistic_name(r.statistic))},
                    {"p", r.p},
                    {"mean", r.mean},
                    {"stderr", r.std_error},
                    {"samples", r.samples},
                    {"predicted", optional_number(r.predicted)},
                    {"ratio", optional_number(r.ratio)}});
  }
  json failures = json::array();
  for (const auto& f : report.failures) failures.push_back({{"n", f.n}, {"message", f.message}});
  json exceed = json::array();
  for (const auto& [n, frac] : report.leaf_deviation_exceedance) exceed.push_back({{"n", n}, {"fraction", frac}});
  return {{"rows", rows},
          {"failures", failures},
          {"leaf_deviation",
           {{"epsilon", report.epsilon},
            {"exceedance", exceed},
            {"calibrated_threshold", kLeafDeviationThreshold},
            {"calibrated_at_n", kLeafDeviationThresholdSize},
            {"threshold_source", "empirical calibration"}}}};
}

std::string samples_csv(const StatReport& report) {
  std::string out = "n,statistic,trial,value\n";
  for (const auto& v : report.values) {
    out += std::to_string(v.n) + "," + std::string(statistic_name(v.statistic)) + "," + std::to_string(v.trial) +
           "," + number(v.value) + "\n";
  }
  return out;
}

double distortion(const std::vector<std::pair<int, int>>& relation, int size_a, const DistanceOracle& da,
                  int size_b, const DistanceOracle& db) {
  std::vector<char> seen_a(size_a, 0), seen_b(size_b, 0);
  for (auto [x, y] : relation) {
    if (x < 0 || x >= size_a || y < 0 || y >= size_b) throw std::out_of_range("relation point out of range");
    seen_a[x] = seen_b[y] = 1;
  }
  for (int x = 0; x < size_a; ++x) {
    if (!seen_a[x]) throw std::invalid_argument("not a correspondence: point " + std::to_string(x) +
                                                " of the first space is uncovered");
  }
  for (int y = 0; y < size_b; ++y) {
    if (!seen_b[y]) throw std::invalid_argument("not a correspondence: point " + std::to_string(y) +
                                                " of the second space is uncovered");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < relation.size(); ++i) {
    for (std::size_t j = i + 1; j < relation.size(); ++j) {
      const double gap = std::abs(da(relation[i].first, relation[j].first) - db(relation[i].second, relation[j].second));
      worst = std::max(worst, gap);
    }
  }
  return worst;
}

double leaf_deviation_from_distances(const std::vector<std::vector<double>>& d_dissection,
                             const std::vector<std::vector<double>>& d_tree, double c_geo, double tree_diameter) {
  const std::size_t n = d_dissection.size();
  if (d_tree.size() != n) throw std::invalid_argument("distance matrices differ in size");
  double worst = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      worst = std::max(worst, std::abs(d_dissection[u][v] - c_geo * d_tree[u][v]));
    }
  }
  return worst / std::max(tree_diameter, std::sqrt(static_cast<double>(n)));
}

double leaf_deviation(const Dissection& d, const PlantedTree& planted, double c_geo) {
  const int n = d.n();
  if (planted.leaf_count() != n) throw std::invalid_argument("tree and dissection sizes differ");
  std::vector<int> leaf_of(n);
  for (int k = 0; k < n; ++k) leaf_of[k] = planted.leaf(k);
  // Tree distances from each leaf, read only at leaves.
  std::vector<std::pair<int, int>> tree_edges;
  const auto& tree = planted.tree();
  for (int v = 1; v < tree.size(); ++v) tree_edges.emplace_back(tree.parent(v), v);
  const AdjacencyGraph tree_graph(tree.size(), tree_edges);

  std::vector<int> dd, dt, queue;
  double worst = 0.0;
  for (int u = 0; u < n; ++u) {
    bfs_distances(d.graph(), u, dd, queue);
    bfs_distances(tree_graph, leaf_of[u], dt, queue);
    for (int v = u + 1; v < n; ++v) {
      worst = std::max(worst, std::abs(dd[v] - c_geo * dt[leaf_of[v]]));
    }
  }
  const double diam = tree_diameter(tree);
  return worst / std::max(diam, std::sqrt(static_cast<double>(n)));
}

LeafMetric leaf_metric(const PlaneTree& tree) {
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < tree.size(); ++v) edges.emplace_back(tree.parent(v), v);
  const AdjacencyGraph g(tree.size(), edges);
  LeafMetric out{tree.leaves(), {}};
  std::vector<int> dist, queue;
  for (int a : out.leaves) {
    bfs_distances(g, a, dist, queue);
    std::vector<int> row;
    row.reserve(out.leaves.size());
    for (int b : out.leaves) row.push_back(dist[b]);
    out.distances.push_back(std::move(row));
  }
  return out;
}

int leaf_proximity(const PlaneTree& tree) {
  std::vector<int> nearest(tree.size(), 0);
  int worst = 0;
  for (int v = tree.size() - 1; v >= 0; --v) {
    if (!tree.is_leaf(v)) {
      int best = tree.size();
      for (int c : tree.children(v)) best = std::min(best, nearest[c] + 1);
      nearest[v] = best;
    }
    worst = std::max(worst, nearest[v]);
  }
  return worst;
}

AcceptanceProbe acceptance_probe(const OffspringDistribution& mu, int n, std::uint64_t attempts,
                                 std::uint64_t seed, int threads) {
  if (n < 3) throw std::invalid_argument("acceptance_probe: n must be >= 3");
  if (attempts < 1) throw std::invalid_argument("acceptance_probe: attempts must be >= 1");
  // Fixed chunking keeps the count independent of the thread count.
  constexpr std::uint64_t kChunk = 100'000;
  const int chunks = static_cast<int>((attempts + kChunk - 1) / kChunk);
  std::vector<std::uint64_t> hits(chunks, 0);
  parallel_for(chunks, threads, [&](int c) {
    auto rng = make_stream(seed, 0, c);
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(attempts, begin + kChunk);
    for (std::uint64_t a = begin; a < end; ++a) hits[c] += gw_attempt_hits_leaf_count(mu, n - 1, rng);
  });
  AcceptanceProbe out;
  out.attempts = attempts;
  for (auto h : hits) out.hits += h;
  if (out.hits == 0) throw std::runtime_error("acceptance_probe: no acceptances");
  out.rate = static_cast<double>(out.hits) / static_cast<double>(attempts);
  out.predicted = std::sqrt(mu.mu0() / (2.0 * std::numbers::pi * mu.variance())) * std::pow(n, -1.5);
  out.ratio = out.rate / out.predicted;
  const double se = std::sqrt(out.rate * (1.0 - out.rate) / static_cast<double>(attempts));
  out.ratio_low = (out.rate - 1.96 * se) / out.predicted;
  out.ratio_high = (out.rate + 1.96 * se) / out.predicted;
  return out;
}

}  // namespace dissectree
