#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "dissectree/crt_reference.hpp"
#include "dissectree/dissection.hpp"
#include "dissectree/distribution_json.hpp"
#include "dissectree/errors.hpp"
#include "dissectree/geodesic.hpp"
#include "dissectree/harness.hpp"
#include "dissectree/looptree.hpp"
#include "dissectree/offspring.hpp"
#include "dissectree/plane_tree.hpp"
#include "dissectree/rng.hpp"
#include "dissectree/spine_chain.hpp"

namespace dt = dissectree;
using nlohmann::json;

namespace {

constexpr int kExitInvariant = 2;
constexpr int kExitCap = 3;

struct Globals {
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "csv";
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + g.out);
  f << text;
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string csv_rows(const json& rows, const std::vector<std::string>& keys) {
  std::string out;
  for (std::size_t i = 0; i < keys.size(); ++i) out += (i ? "," : "") + keys[i];
  out += "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (i) out += ",";
      const auto& v = r.at(keys[i]);
      if (v.is_number_float()) {
        out += num(v.get<double>());
      } else if (v.is_string()) {
        out += v.get<std::string>();
      } else if (!v.is_null()) {
        out += v.dump();
      }
    }
    out += "\n";
  }
  return out;
}

std::string table(const Globals& g, const json& rows, const std::vector<std::string>& keys) {
  return g.format == "json" ? rows.dump(2) + "\n" : csv_rows(rows, keys);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boltzmann dissections, their dual trees and geodesic chains"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Master random seed")->capture_default_str();
  app.add_option("--out", g.out, "Write output to this path instead of stdout");
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  std::string dist_arg = R"({"kind":"uniform_dissection"})";
  auto add_dist = [&](CLI::App* sub) {
    sub->add_option("--dist", dist_arg, "Distribution descriptor: inline JSON or a file path")->capture_default_str();
    sub->fallthrough();
  };

  auto* constants = app.add_subcommand("constants", "Scaling constants and predicted first moments");
  add_dist(constants);

  int leaves = 0, vertices = 0, count = 1;
  auto* sample_tree = app.add_subcommand("sample-tree", "Conditioned Galton-Watson trees, one encoding per line");
  add_dist(sample_tree);
  auto* leaves_opt = sample_tree->add_option("--leaves", leaves, "Condition on this many leaves");
  auto* vertices_opt = sample_tree->add_option("--vertices", vertices, "Condition on this many vertices");
  leaves_opt->excludes(vertices_opt);
  sample_tree->add_option("--count", count, "Number of trees")->check(CLI::PositiveNumber);

  int n = 0;
  auto* sample_dissection = app.add_subcommand("sample-dissection", "Boltzmann dissection of the n-gon");
  add_dist(sample_dissection);
  sample_dissection->add_option("--n", n, "Polygon size")->required();

  int samples = 1;
  auto* geodesic = app.add_subcommand("geodesic-check", "Largest |d(0,k) - H(l_k)| over sampled dissections");
  add_dist(geodesic);
  geodesic->add_option("--n", n, "Polygon size")->required();
  geodesic->add_option("--samples", samples, "Number of dissections")->check(CLI::PositiveNumber);

  std::int64_t steps = 1000;
  int trials = 1;
  auto* chain = app.add_subcommand("chain", "Trajectories of the geodesic chain along the spine");
  add_dist(chain);
  chain->add_option("--steps", steps, "Chain length")->check(CLI::PositiveNumber);
  chain->add_option("--trials", trials, "Number of trajectories")->check(CLI::PositiveNumber);

  std::string variant = "loop";
  auto* loop = app.add_subcommand("loop", "Diameters of looptrees of size-conditioned trees");
  add_dist(loop);
  loop->add_option("--n", n, "Tree size (vertices)")->required();
  loop->add_option("--samples", samples, "Number of trees")->check(CLI::PositiveNumber);
  loop->add_option("--variant", variant)->check(CLI::IsMember({"loop", "loopbar"}))->capture_default_str();

  std::string config_path, samples_out;
  int threads = 0;
  auto* experiment = app.add_subcommand("experiment", "Scaling experiment from a JSON config");
  experiment->fallthrough();
  experiment->add_option("--config", config_path, "ExperimentConfig JSON file")->required()->check(CLI::ExistingFile);
  experiment->add_option("--threads", threads, "Override the worker count");
  experiment->add_option("--samples-out", samples_out, "Also write per-sample values as CSV");

  std::string method = "trees";
  auto* enumerate = app.add_subcommand("enumerate", "All dissections of the n-gon");
  enumerate->fallthrough();
  enumerate->add_option("--n", n, "Polygon size")->required();
  enumerate->add_option("--method", method)->check(CLI::IsMember({"trees", "direct"}))->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*constants) {
      const auto mu = dt::distribution_from_argument(dist_arg);
      const auto k = dt::scaling_constants(mu);
      json out{{"c_tree", k.c_tree},   {"c_geo", k.c_geo},     {"c", k.c},
               {"c_loop", k.c_loop},   {"c_loopbar", k.c_loopbar},
               {"mu0", mu.mu0()},      {"variance", mu.variance()},
               {"even_mass", mu.even_mass()}};
      json predicted = json::object();
      for (auto s : {dt::Statistic::diameter, dt::Statistic::radius, dt::Statistic::height_u,
                     dt::Statistic::tree_diameter, dt::Statistic::loop_diameter, dt::Statistic::loopbar_diameter}) {
        predicted[std::string(dt::statistic_name(s))] = *dt::predict(mu, s, 1.0);
      }
      out["predicted_first_moment"] = predicted;
      if (g.format == "json") {
        emit(g, out.dump(2) + "\n");
      } else {
        std::string text = "name,value\n";
        for (const auto& [key, v] : out.items()) {
          if (v.is_object()) {
            for (const auto& [sub, w] : v.items()) text += "predicted_" + sub + "," + num(w.get<double>()) + "\n";
          } else {
            text += key + "," + num(v.get<double>()) + "\n";
          }
        }
        emit(g, text);
      }
      return 0;
    }

    if (*sample_tree) {
      if (leaves <= 0 && vertices <= 0) throw CLI::ValidationError("give --leaves or --vertices");
      const auto mu = dt::distribution_from_argument(dist_arg);
      json rows = json::array();
      for (int t = 0; t < count; ++t) {
        auto rng = dt::make_stream(g.seed, 0, t);
        const auto res = leaves > 0 ? dt::sample_conditioned_leaves(mu, leaves, rng)
                                    : dt::sample_conditioned_vertices(mu, vertices, rng);
        rows.push_back({{"trial", t}, {"attempts", res.attempts}, {"tree", res.tree.to_string()}});
      }
      if (g.format == "json") {
        emit(g, rows.dump(2) + "\n");
      } else {
        std::string text;
        for (const auto& r : rows) text += r.at("tree").get<std::string>() + "\n";
        emit(g, text);
      }
      return 0;
    }

    if (*sample_dissection) {
      const auto mu = dt::distribution_from_argument(dist_arg);
      auto rng = dt::make_stream(g.seed, 0, 0);
      const auto s = dt::sample_boltzmann(mu, n, rng);
      if (g.format == "json") {
        json chords = json::array();
        for (auto [a, b] : s.dissection.chords()) chords.push_back({a, b});
        emit(g, json{{"n", n}, {"chords", chords}, {"attempts", s.attempts}}.dump(2) + "\n");
      } else {
        emit(g, s.dissection.to_string());
      }
      return 0;
    }

    if (*geodesic) {
      const auto mu = dt::distribution_from_argument(dist_arg);
      int worst = 0;
      for (int t = 0; t < samples; ++t) {
        auto rng = dt::make_stream(g.seed, 0, t);
        worst = std::max(worst, dt::max_distance_slack(dt::sample_boltzmann(mu, n, rng).tree));
      }
      json out{{"n", n}, {"samples", samples}, {"max_slack", worst}, {"ok", worst <= 1}};
      emit(g, g.format == "json" ? out.dump(2) + "\n"
                                 : "n,samples,max_slack\n" + std::to_string(n) + "," + std::to_string(samples) +
                                       "," + std::to_string(worst) + "\n");
      if (worst > 1) {
        std::cerr << "invariant violated: slack " << worst << " exceeds 1\n";
        return kExitInvariant;
      }
      return 0;
    }

    if (*chain) {
      const auto mu = dt::distribution_from_argument(dist_arg);
      json rows = json::array();
      for (int t = 0; t < trials; ++t) {
        auto rng = dt::make_stream(g.seed, 0, t);
        const auto traj = dt::simulate(mu, steps, rng);
        rows.push_back({{"trial", t},
                        {"S_n", traj.s},
                        {"S_n/n", static_cast<double>(traj.s) / static_cast<double>(steps)},
                        {"occupation_D", static_cast<double>(traj.occupation_d) / static_cast<double>(steps)}});
      }
      emit(g, table(g, rows, {"trial", "S_n", "S_n/n", "occupation_D"}));
      return 0;
    }

    if (*loop) {
      const auto mu = dt::distribution_from_argument(dist_arg);
      json rows = json::array();
      for (int t = 0; t < samples; ++t) {
        auto rng = dt::make_stream(g.seed, 0, t);
        const auto tree = dt::sample_conditioned_vertices(mu, n, rng).tree;
        const auto graph = variant == "loop" ? dt::loop_of(tree) : dt::loopbar_of(tree);
        rows.push_back({{"sample", t}, {"diameter", dt::graph_diameter(graph.graph)}});
      }
      emit(g, table(g, rows, {"sample", "diameter"}));
      return 0;
    }

    if (*experiment) {
      std::ifstream in(config_path);
      auto config = dt::ExperimentConfig::from_json(json::parse(in));
      if (app.count("--seed")) config.seed = g.seed;
      if (threads > 0) config.threads = threads;
      const auto report = dt::run_scaling_experiment(config);
      emit(g, g.format == "json" ? dt::report_json(report).dump(2) + "\n" : dt::report_csv(report));
      if (!samples_out.empty()) {
        std::ofstream f(samples_out, std::ios::binary);
        f << dt::samples_csv(report);
      }
      for (const auto& f : report.failures) std::cerr << "n=" << f.n << ": " << f.message << "\n";
      return report.failures.empty() ? 0 : kExitCap;
    }

    if (*enumerate) {
      const auto all = method == "trees" ? dt::enumerate_dissections(n) : dt::enumerate_dissections_direct(n);
      if (g.format == "json") {
        json list = json::array();
        for (const auto& d : all) {
          json chords = json::array();
          for (auto [a, b] : d.chords()) chords.push_back({a, b});
          list.push_back(chords);
        }
        emit(g, json{{"n", n}, {"count", all.size()}, {"dissections", list}}.dump(2) + "\n");
      } else {
        std::string text = "index,chords\n";
        for (std::size_t i = 0; i < all.size(); ++i) {
          std::string chords;
          for (auto [a, b] : all[i].chords()) chords += (chords.empty() ? "" : " ") + std::to_string(a) + "-" + std::to_string(b);
          text += std::to_string(i) + "," + chords + "\n";
        }
        emit(g, text);
      }
      return 0;
    }
  } catch (const dt::SamplerCapExhausted& e) {
    std::cerr << "sampler cap exhausted: " << e.what() << "\n";
    return kExitCap;
  } catch (const dt::InvariantViolation& e) {
    std::cerr << "invariant violated: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
