#include "dissectree/distribution_json.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

namespace dissectree {

using nlohmann::json;

namespace {

GeometricTail tail_from_json(const json& t) {
  return {t.at("start").get<int>(), t.value("step", 1), t.at("first_weight").get<double>(),
          t.at("ratio").get<double>()};
}

FaceDegreeSet faces_from_json(const json& a) {
  if (a.contains("set")) return a.at("set").get<std::set<int>>();
  if (a.contains("progression")) {
    const auto& p = a.at("progression");
    FaceDegreeProgression prog{p.at("offset").get<int>(), p.value("step", 1), std::nullopt};
    const bool unbounded = p.value("unbounded", !p.contains("last"));
    if (!unbounded) {
      if (!p.contains("last")) throw std::invalid_argument("bounded progression needs \"last\"");
      prog.last = p.at("last").get<int>();
    }
    return prog;
  }
  throw std::invalid_argument("face degree descriptor needs \"set\" or \"progression\"");
}

}  // namespace

OffspringDistribution distribution_from_json(const json& j) {
  try {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "uniform_dissection") return uniform_dissection();
    if (kind == "p_angulation") return p_angulation(j.at("p").get<int>());
    if (kind == "constrained") return constrained(faces_from_json(j.at("A")));
    if (kind == "custom") {
      std::map<int, double> atoms;
      if (j.contains("weights")) {
        for (const auto& [key, value] : j.at("weights").items()) atoms[std::stoi(key)] = value.get<double>();
      }
      std::optional<GeometricTail> tail;
      if (j.contains("tail")) tail = tail_from_json(j.at("tail"));
      if (j.value("normalize", false)) {
        WeightSequence w;
        for (const auto& [i, v] : atoms) {
          if (i >= 2) w.atoms[i] = v;
        }
        w.tail = tail;
        return normalize_to_critical(w);
      }
      bool mass_at_one = atoms.count(1) && atoms.at(1) > 0.0;
      if (tail && tail->first_weight > 0.0 && tail->start <= 1 && (1 - tail->start) % tail->step == 0) {
        mass_at_one = true;
      }
      return OffspringDistribution::create(std::move(atoms), tail, j.value("dissection_mode", !mass_at_one));
    }
    throw std::invalid_argument("unknown distribution kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad distribution descriptor: ") + e.what());
  }
}

OffspringDistribution distribution_from_argument(std::string_view text_or_path) {
  const std::string arg(text_or_path);
  std::error_code ec;
  if (!arg.empty() && arg.front() != '{' && std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    return distribution_from_json(json::parse(in));
  }
  try {
    return distribution_from_json(json::parse(arg));
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("distribution is neither a file nor valid JSON: " + arg);
  }
}

json distribution_to_json(const OffspringDistribution& mu) {
  json weights = json::object();
  for (const auto& [k, w] : mu.atoms()) {
    if (w != 0.0) weights[std::to_string(k)] = w;
  }
  json out{{"kind", "custom"}, {"weights", weights}, {"dissection_mode", mu.dissection_mode()}};
  if (mu.tail()) {
    const auto& t = *mu.tail();
    out["tail"] = {{"start", t.start}, {"step", t.step}, {"first_weight", t.first_weight}, {"ratio", t.ratio}};
  }
  return out;
}

}  // namespace dissectree
