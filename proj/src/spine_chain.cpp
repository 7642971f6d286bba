#include "dissectree/spine_chain.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "dissectree/geodesic.hpp"

namespace dissectree {

ChainState chain_step(Driving p, int g, int d) {
  // Left and right play symmetric roles; D is represented by L.
  const auto step = geod_step(p == Driving::D ? Position::L : Position::U, g, d);
  return {step.ds, step.next == Position::U ? Driving::U : Driving::D};
}

double TransitionRow::total() const {
  double t = 0.0;
  for (double v : to_d) t += v;
  for (double v : to_u) t += v;
  return t;
}

namespace {

// Row length: beyond index i every entry is bounded by tail sums from 2i on.
std::size_t row_length(const OffspringDistribution& mu, double cutoff) {
  const int support = mu.effective_support(cutoff);
  return static_cast<std::size_t>(support / 2 + 2);
}

}  // namespace

TransitionRow joint_step_law(const OffspringDistribution& mu, Driving source, double cutoff) {
  const std::size_t len = row_length(mu, cutoff);
  TransitionRow row;
  row.to_d.assign(len, 0.0);
  row.to_u.assign(len, 0.0);
  for (std::size_t idx = 0; idx < len; ++idx) {
    const int i = static_cast<int>(idx);
    if (source == Driving::D) {
      row.to_d[idx] = mu.tail_sum(2 * i + 1) * (i >= 1 ? 2.0 : 1.0);
      row.to_u[idx] = i >= 1 ? mu.prob(2 * i) : 0.0;
    } else {
      row.to_d[idx] = 2.0 * mu.tail_sum(2 * i + 2);
      row.to_u[idx] = mu.prob(2 * i + 1);
    }
  }
  return row;
}

DrivingMatrix driving_matrix(const OffspringDistribution& mu) {
  const double stay = mu.odd_mass() + mu.mu0();
  return {{{stay, mu.positive_even_mass()}, {mu.even_mass(), mu.odd_mass()}}};
}

std::array<double, 2> stationary(const OffspringDistribution& mu) {
  const double even_pos = mu.positive_even_mass();
  if (even_pos <= 0.0) return {1.0, 0.0};
  const double denom = mu.even_mass() + even_pos;
  return {mu.even_mass() / denom, even_pos / denom};
}

TransitionRow two_step_law(const OffspringDistribution& mu, Driving source, double cutoff) {
  const auto m = driving_matrix(mu);
  const std::size_t len = row_length(mu, cutoff);
  // Weights of the intermediate driving state D and U.
  const double via_d = source == Driving::D ? m[0][0] : m[1][0];
  const double via_u = source == Driving::D ? m[0][1] : m[1][1];
  TransitionRow row;
  row.to_d.assign(len, 0.0);
  row.to_u.assign(len, 0.0);
  for (std::size_t idx = 0; idx < len; ++idx) {
    const int i = static_cast<int>(idx);
    const double determined = mu.tail_sum(2 * i + 1) * (i >= 1 ? 2.0 : 1.0);
    row.to_d[idx] = via_d * determined + via_u * 2.0 * mu.tail_sum(2 * i + 2);
    row.to_u[idx] = via_d * (i >= 1 ? mu.prob(2 * i) : 0.0) + via_u * mu.prob(2 * i + 1);
  }
  return row;
}

Trajectory simulate(const OffspringDistribution& mu, std::int64_t steps, Rng& rng) {
  if (steps < 1) throw std::invalid_argument("simulate: steps must be >= 1");
  Trajectory out;
  out.steps = steps;
  Driving p = Driving::D;
  for (std::int64_t n = 0; n < steps; ++n) {
    const auto spine = sample_spine_step(mu, rng);
    const auto next = chain_step(p, spine.spine_child - 1, spine.children - spine.spine_child);
    out.s += next.x;
    p = next.p;
    (p == Driving::D ? out.occupation_d : out.occupation_u) += 1;
  }
  return out;
}

namespace {

struct Frontier {
  // Geodesic state of each vertex of the current generation.
  std::vector<std::pair<int, Position>> states;
  double weight = 1.0;
};

constexpr std::uint64_t kConfigurationCap = 20'000'000;

}  // namespace

SpineLawComparison spine_H_law_exhaustive(const OffspringDistribution& mu, int depth) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  if (depth > 6) throw std::invalid_argument("exhaustive spine law limited to depth 6");
  const auto top = mu.max_support();
  if (!top) throw std::invalid_argument("exhaustive spine law needs finitely supported offspring");
  std::vector<std::pair<int, double>> support;
  for (int k = 0; k <= *top; ++k) {
    if (mu.prob(k) > 0.0) support.emplace_back(k, mu.prob(k));
  }

  SpineLawComparison out;
  std::map<int, double> tree_side;

  // Depth 1 of the planted tree holds the original root, at (0, L).
  std::vector<Frontier> layer{Frontier{{{0, Position::L}}, 1.0}};
  for (int gen = 1; gen < depth; ++gen) {
    std::vector<Frontier> next_layer;
    for (const auto& f : layer) {
      // Enumerate all child-count tuples of this generation.
      std::vector<std::size_t> pick(f.states.size(), 0);
      while (true) {
        Frontier child;
        child.weight = f.weight;
        for (std::size_t v = 0; v < f.states.size(); ++v) {
          const auto [k, w] = support[pick[v]];
          child.weight *= w;
          const auto [h, pos] = f.states[v];
          for (int r = 1; r <= k; ++r) {
            const auto step = geod_step(pos, r - 1, k - r);
            child.states.emplace_back(h + step.ds, step.next);
          }
        }
        if (++out.configurations > kConfigurationCap) {
          throw std::invalid_argument("exhaustive spine law exceeded the configuration cap");
        }
        if (!child.states.empty()) next_layer.push_back(std::move(child));
        std::size_t v = f.states.size();
        bool done = true;
        while (v > 0) {
          --v;
          if (++pick[v] < support.size()) {
            done = false;
            break;
          }
          pick[v] = 0;
        }
        if (done) break;
      }
    }
    layer = std::move(next_layer);
  }
  // The root of the planted tree sits at depth 0 with its single child at
  // depth 1; `layer` now holds the vertices at depth `depth`.
  for (const auto& f : layer) {
    for (const auto& [h, pos] : f.states) tree_side[h] += f.weight;
  }

  // Chain side: S_{depth-1} from (S, P) = (0, D).
  const auto row_d = joint_step_law(mu, Driving::D);
  const auto row_u = joint_step_law(mu, Driving::U);
  std::map<std::pair<int, int>, double> dist{{{0, 0}, 1.0}};
  for (int step = 0; step + 1 < depth; ++step) {
    std::map<std::pair<int, int>, double> next;
    for (const auto& [state, w] : dist) {
      const auto& row = state.second == 0 ? row_d : row_u;
      for (std::size_t i = 0; i < row.to_d.size(); ++i) {
        if (row.to_d[i] > 0.0) next[{state.first + static_cast<int>(i), 0}] += w * row.to_d[i];
        if (row.to_u[i] > 0.0) next[{state.first + static_cast<int>(i), 1}] += w * row.to_u[i];
      }
    }
    dist = std::move(next);
  }
  std::map<int, double> chain_side;
  for (const auto& [state, w] : dist) chain_side[state.first] += w;

  int top_h = 0;
  for (const auto& [h, w] : tree_side) top_h = std::max(top_h, h);
  for (const auto& [h, w] : chain_side) top_h = std::max(top_h, h);
  out.tree_side.assign(top_h + 1, 0.0);
  out.chain_side.assign(top_h + 1, 0.0);
  for (const auto& [h, w] : tree_side) out.tree_side[h] = w;
  for (const auto& [h, w] : chain_side) out.chain_side[h] = w;
  return out;
}

}  // namespace dissectree
