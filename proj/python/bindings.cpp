#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dissectree/crt_reference.hpp"
#include "dissectree/dissection.hpp"
#include "dissectree/distribution_json.hpp"
#include "dissectree/errors.hpp"
#include "dissectree/geodesic.hpp"
#include "dissectree/harness.hpp"
#include "dissectree/looptree.hpp"
#include "dissectree/spine_chain.hpp"

namespace py = pybind11;
namespace dt = dissectree;

namespace {

// JSON crosses the boundary as text; the Python layer does dict <-> str.
dt::OffspringDistribution law_from_text(const std::string& text) {
  return dt::distribution_from_json(nlohmann::json::parse(text));
}

py::dict constants_dict(const dt::OffspringDistribution& mu) {
  const auto k = dt::scaling_constants(mu);
  py::dict d;
  d["c_tree"] = k.c_tree;
  d["c_geo"] = k.c_geo;
  d["c"] = k.c;
  d["c_loop"] = k.c_loop;
  d["c_loopbar"] = k.c_loopbar;
  return d;
}

char position_char(dt::Position p) { return p == dt::Position::L ? 'L' : p == dt::Position::R ? 'R' : 'U'; }

dt::Position parse_position(const std::string& s) {
  if (s == "L") return dt::Position::L;
  if (s == "R") return dt::Position::R;
  if (s == "U") return dt::Position::U;
  throw std::invalid_argument("position must be L, R or U");
}

dt::Driving parse_driving(const std::string& s) {
  if (s == "D") return dt::Driving::D;
  if (s == "U") return dt::Driving::U;
  throw std::invalid_argument("driving state must be D or U");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Random polygon dissections, their dual trees and scaling statistics";

  py::register_exception<dt::SamplerCapExhausted>(m, "SamplerCapExhausted", PyExc_RuntimeError);
  py::register_exception<dt::InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);

  py::class_<dt::OffspringDistribution>(m, "OffspringDistribution")
      .def("prob", &dt::OffspringDistribution::prob)
      .def("tail_sum", &dt::OffspringDistribution::tail_sum)
      .def_property_readonly("mean", &dt::OffspringDistribution::mean)
      .def_property_readonly("variance", &dt::OffspringDistribution::variance)
      .def_property_readonly("mu0", &dt::OffspringDistribution::mu0)
      .def_property_readonly("dissection_mode", &dt::OffspringDistribution::dissection_mode)
      .def("constants", &constants_dict)
      .def("c_geo_series", [](const dt::OffspringDistribution& mu) { return dt::c_geo_series(mu); })
      .def("to_json", [](const dt::OffspringDistribution& mu) { return dt::distribution_to_json(mu).dump(); });

  m.def("uniform_dissection", &dt::uniform_dissection);
  m.def("p_angulation", &dt::p_angulation, py::arg("p"));
  m.def("_distribution_from_json", &law_from_text);

  py::class_<dt::PlaneTree>(m, "PlaneTree")
      .def_static("from_degrees", &dt::PlaneTree::from_degrees, py::arg("degrees"), py::arg("no_unary") = false)
      .def_static("parse", &dt::PlaneTree::parse)
      .def("__str__", &dt::PlaneTree::to_string)
      .def("__repr__", [](const dt::PlaneTree& t) { return "PlaneTree('" + t.to_string() + "')"; })
      .def("__len__", &dt::PlaneTree::size)
      .def("__eq__", [](const dt::PlaneTree& a, const dt::PlaneTree& b) { return a == b; })
      .def_property_readonly("degrees", &dt::PlaneTree::degrees)
      .def_property_readonly("leaf_count", &dt::PlaneTree::leaf_count)
      .def_property_readonly("height", &dt::PlaneTree::height)
      .def("diameter", [](const dt::PlaneTree& t) { return dt::tree_diameter(t); })
      .def("heights", [](const dt::PlaneTree& t) { return dt::heights(t); });

  py::class_<dt::Dissection>(m, "Dissection")
      .def_static("from_chords", &dt::Dissection::from_chords, py::arg("n"), py::arg("chords"))
      .def_static("parse", &dt::Dissection::parse)
      .def("__str__", &dt::Dissection::to_string)
      .def("__eq__", [](const dt::Dissection& a, const dt::Dissection& b) { return a == b; })
      .def_property_readonly("n", &dt::Dissection::n)
      .def_property_readonly("chords", &dt::Dissection::chords)
      .def("face_degrees", [](const dt::Dissection& d) { return dt::faces(d).degrees(); })
      .def("distances", [](const dt::Dissection& d, int v) { return dt::bfs_distances(d, v); }, py::arg("v") = 0)
      .def("diameter", [](const dt::Dissection& d) { return dt::diameter(d); })
      .def("radius", [](const dt::Dissection& d) { return dt::radius(d); });

  m.def("from_tree", &dt::from_tree);
  m.def("to_tree", &dt::to_tree);
  m.def("boltzmann_weight", &dt::boltzmann_weight);
  m.def("partition_function", &dt::partition_function);
  m.def(
      "enumerate_dissections",
      [](int n, const std::string& method) {
        if (method == "trees") return dt::enumerate_dissections(n);
        if (method == "direct") return dt::enumerate_dissections_direct(n);
        throw std::invalid_argument("method must be 'trees' or 'direct'");
      },
      py::arg("n"), py::arg("method") = "trees");
  m.def("enumerate_no_unary_trees", &dt::enumerate_no_unary_trees);

  m.def(
      "sample_dissection",
      [](const dt::OffspringDistribution& mu, int n, std::uint64_t seed, std::uint64_t trial,
         std::uint64_t cap) {
        py::gil_scoped_release release;
        auto rng = dt::make_stream(seed, 0, trial);
        auto s = dt::sample_boltzmann(mu, n, rng, cap);
        return std::make_tuple(std::move(s.dissection), std::move(s.tree), s.attempts);
      },
      py::arg("mu"), py::arg("n"), py::arg("seed") = 0, py::arg("trial") = 0,
      py::arg("attempt_cap") = dt::kDefaultAttemptCap);
  m.def(
      "sample_tree",
      [](const dt::OffspringDistribution& mu, std::optional<int> leaves, std::optional<int> vertices,
         std::uint64_t seed, std::uint64_t trial, std::uint64_t cap) {
        if (leaves.has_value() == vertices.has_value()) {
          throw std::invalid_argument("give exactly one of leaves or vertices");
        }
        py::gil_scoped_release release;
        auto rng = dt::make_stream(seed, 0, trial);
        auto s = leaves ? dt::sample_conditioned_leaves(mu, *leaves, rng, cap)
                        : dt::sample_conditioned_vertices(mu, *vertices, rng, cap);
        return std::make_tuple(std::move(s.tree), s.attempts);
      },
      py::arg("mu"), py::arg("leaves") = py::none(), py::arg("vertices") = py::none(), py::arg("seed") = 0,
      py::arg("trial") = 0, py::arg("attempt_cap") = dt::kDefaultAttemptCap);

  m.def(
      "geod_step",
      [](const std::string& p, int g, int d) {
        const auto s = dt::geod_step(parse_position(p), g, d);
        return std::make_tuple(s.ds, std::string(1, position_char(s.next)));
      },
      py::arg("position"), py::arg("g"), py::arg("d"));
  m.def("all_heights_H", &dt::all_heights_H);
  m.def("max_distance_slack", &dt::max_distance_slack, "Largest |d(0, k) - H(l_k)| over the leaves");

  m.def(
      "joint_step_law",
      [](const dt::OffspringDistribution& mu, const std::string& source) {
        const auto row = dt::joint_step_law(mu, parse_driving(source));
        return std::make_tuple(row.to_d, row.to_u);
      },
      py::arg("mu"), py::arg("source"));
  m.def("driving_matrix", &dt::driving_matrix);
  m.def("stationary", &dt::stationary);
  m.def(
      "simulate_chain",
      [](const dt::OffspringDistribution& mu, std::int64_t steps, std::uint64_t seed, std::uint64_t trial) {
        py::gil_scoped_release release;
        auto rng = dt::make_stream(seed, 0, trial);
        const auto t = dt::simulate(mu, steps, rng);
        return std::make_tuple(t.s, t.occupation_d, t.occupation_u);
      },
      py::arg("mu"), py::arg("steps"), py::arg("seed") = 0, py::arg("trial") = 0);

  m.def("loop_diameter", [](const dt::PlaneTree& t) { return dt::graph_diameter(dt::loop_of(t).graph); });
  m.def("loopbar_diameter", [](const dt::PlaneTree& t) { return dt::graph_diameter(dt::loopbar_of(t).graph); });
  m.def("loop_height", [](const dt::PlaneTree& t) { return dt::mean_root_distance(dt::loop_of(t)); });
  m.def("loopbar_height", [](const dt::PlaneTree& t) { return dt::mean_root_distance(dt::loopbar_of(t)); });

  m.def("diameter_density", &dt::diameter_density, py::arg("x"), py::arg("k_max") = 200, py::arg("tol") = 1e-16);
  m.def("diam_moment", &dt::diam_moment);
  m.def("radius_moment", &dt::radius_moment);
  m.def("height_u_moment", &dt::height_u_moment);
  m.def(
      "predict",
      [](const dt::OffspringDistribution& mu, const std::string& statistic, double p) {
        return dt::predict(mu, dt::parse_statistic(statistic), p);
      },
      py::arg("mu"), py::arg("statistic"), py::arg("p") = 1.0);

  m.def(
      "_run_experiment",
      [](const std::string& config_text) {
        const auto config = dt::ExperimentConfig::from_json(nlohmann::json::parse(config_text));
        dt::StatReport report;
        {
          py::gil_scoped_release release;
          report = dt::run_scaling_experiment(config);
        }
        return std::make_tuple(dt::report_csv(report), dt::report_json(report).dump(), dt::samples_csv(report));
      });
  m.def("leaf_proximity", &dt::leaf_proximity);
  m.def(
      "leaf_deviation",
      [](const dt::PlaneTree& tree, double c_geo) {
        return dt::leaf_deviation(dt::from_tree(tree), dt::plant(tree), c_geo);
      },
      py::arg("tree"), py::arg("c_geo"));
}
