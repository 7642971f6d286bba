#include "dissectree/offspring.hpp"

#include <cmath>
#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "dissectree/spine_chain.hpp"

namespace dissectree {

namespace {

constexpr double kInvariantTol = 1e-12;

// Sums over j >= 0 of w q^j, j w q^j and j^2 w q^j.
struct GeometricSums {
  double s0, s1, s2;
};

GeometricSums geometric_sums(double w, double q) {
  const double r = 1.0 - q;
  return {w / r, w * q / (r * r), w * q * (1.0 + q) / (r * r * r)};
}

// Index J >= 0 with P(J = j) = (1 - q) q^j.
int sample_geometric_index(double q, Rng& rng) {
  if (q <= 0.0) return 0;
  const double u = uniform01_open_left(rng);
  return static_cast<int>(std::floor(std::log(u) / std::log(q)));
}

void validate_tail(const GeometricTail& t, bool allow_ratio_ge_one) {
  if (t.start < 0 || t.step < 1) throw std::invalid_argument("geometric tail: need start >= 0, step >= 1");
  if (!(t.first_weight >= 0.0) || !(t.ratio >= 0.0)) {
    throw std::invalid_argument("geometric tail: weights must be nonnegative");
  }
  if (!allow_ratio_ge_one && t.ratio >= 1.0) throw std::invalid_argument("geometric tail: ratio must be < 1");
}

}  // namespace

OffspringDistribution OffspringDistribution::create(std::map<int, double> atoms,
                                                    std::optional<GeometricTail> tail,
                                                    bool dissection_mode) {
  OffspringDistribution mu;
  for (const auto& [k, w] : atoms) {
    if (k < 0) throw std::invalid_argument("offspring value must be nonnegative");
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("offspring weight must be finite and >= 0");
  }
  if (tail) validate_tail(*tail, false);
  mu.atoms_ = std::move(atoms);
  mu.tail_ = tail;
  mu.dissection_mode_ = dissection_mode;
  mu.compute_moments();

  if (std::abs(mu.mass_ - 1.0) > kInvariantTol) {
    throw std::invalid_argument("offspring law has total mass " + std::to_string(mu.mass_));
  }
  if (std::abs(mu.mean_ - 1.0) > kInvariantTol) {
    throw std::invalid_argument("offspring law is not critical: mean " + std::to_string(mu.mean_));
  }
  if (dissection_mode && mu.prob(1) != 0.0) {
    throw std::invalid_argument("dissection mode requires zero mass at 1");
  }
  return mu;
}

void OffspringDistribution::compute_moments() {
  double mass = 0.0, first = 0.0, second = 0.0, even = 0.0, odd = 0.0;
  atom_list_.clear();
  biased_atom_list_.clear();
  for (const auto& [k, w] : atoms_) {
    if (w == 0.0) continue;
    atom_list_.emplace_back(k, w);
    if (k > 0) biased_atom_list_.emplace_back(k, k * w);
    mass += w;
    first += k * w;
    second += static_cast<double>(k) * k * w;
    (k % 2 == 0 ? even : odd) += w;
  }
  tail_mass_ = biased_geo_mass_ = biased_nb_mass_ = 0.0;
  if (tail_ && tail_->first_weight > 0.0) {
    const double s = tail_->start, t = tail_->step, w = tail_->first_weight, q = tail_->ratio;
    const auto g = geometric_sums(w, q);
    tail_mass_ = g.s0;
    biased_geo_mass_ = s * g.s0;
    biased_nb_mass_ = t * g.s1;
    mass += g.s0;
    first += s * g.s0 + t * g.s1;
    second += s * s * g.s0 + 2.0 * s * t * g.s1 + t * t * g.s2;
    const bool start_even = tail_->start % 2 == 0;
    if (tail_->step % 2 == 0) {
      (start_even ? even : odd) += g.s0;
    } else {
      const double same = w / (1.0 - q * q);
      const double flipped = w * q / (1.0 - q * q);
      (start_even ? even : odd) += same;
      (start_even ? odd : even) += flipped;
    }
  }
  mass_ = mass;
  mean_ = first;
  variance_ = second - first * first;
  even_mass_ = even;
  odd_mass_ = odd;
  mu0_ = prob(0);
}

double OffspringDistribution::prob(int k) const {
  if (k < 0) return 0.0;
  double p = 0.0;
  if (auto it = atoms_.find(k); it != atoms_.end()) p += it->second;
  if (tail_ && k >= tail_->start && (k - tail_->start) % tail_->step == 0) {
    p += tail_->first_weight * std::pow(tail_->ratio, (k - tail_->start) / tail_->step);
  }
  return p;
}

double OffspringDistribution::tail_sum(int k) const {
  if (k <= 0) return mass_;
  double sum = 0.0;
  for (auto it = atoms_.lower_bound(k); it != atoms_.end(); ++it) sum += it->second;
  if (tail_ && tail_->first_weight > 0.0) {
    int j0 = 0;
    if (k > tail_->start) j0 = (k - tail_->start + tail_->step - 1) / tail_->step;
    sum += tail_->first_weight * std::pow(tail_->ratio, j0) / (1.0 - tail_->ratio);
  }
  return sum;
}

std::optional<int> OffspringDistribution::max_support() const {
  if (tail_ && tail_->first_weight > 0.0 && tail_->ratio > 0.0) return std::nullopt;
  int top = 0;
  for (const auto& [k, w] : atom_list_) top = std::max(top, k);
  if (tail_ && tail_->first_weight > 0.0) top = std::max(top, tail_->start);
  return top;
}

int OffspringDistribution::effective_support(double eps) const {
  if (auto top = max_support()) return *top + 1;
  int k = 0;
  for (const auto& [a, w] : atom_list_) k = std::max(k, a + 1);
  while (tail_sum(k) >= eps) k += tail_->step;
  return k;
}

int OffspringDistribution::sample(Rng& rng) const {
  double u = uniform01(rng);
  for (const auto& [k, w] : atom_list_) {
    if (u < w) return k;
    u -= w;
  }
  if (tail_mass_ > 0.0) {
    return tail_->start + tail_->step * sample_geometric_index(tail_->ratio, rng);
  }
  // Rounding residue of order 1e-16 lands on the last atom.
  return atom_list_.back().first;
}

int OffspringDistribution::sample_size_biased(Rng& rng) const {
  double u = uniform01(rng);
  for (const auto& [k, w] : biased_atom_list_) {
    if (u < w) return k;
    u -= w;
  }
  if (tail_mass_ > 0.0) {
    const double q = tail_->ratio;
    // (s + j t) w q^j splits into s * geometric(j) and t * j w q^j; the latter
    // is 1 + (sum of two independent geometric indices).
    if (u < biased_geo_mass_ || biased_nb_mass_ == 0.0) {
      return tail_->start + tail_->step * sample_geometric_index(q, rng);
    }
    const int j = 1 + sample_geometric_index(q, rng) + sample_geometric_index(q, rng);
    return tail_->start + tail_->step * j;
  }
  return biased_atom_list_.back().first;
}

bool OffspringDistribution::operator==(const OffspringDistribution& other) const {
  return atom_list_ == other.atom_list_ && tail_ == other.tail_ && dissection_mode_ == other.dissection_mode_;
}

int sample_offspring(const OffspringDistribution& mu, Rng& rng) { return mu.sample(rng); }

SpineStep sample_spine_step(const OffspringDistribution& mu, Rng& rng) {
  SpineStep step;
  step.children = mu.sample_size_biased(rng);
  step.spine_child = static_cast<int>(uniform_int(rng, 1, step.children));
  return step;
}

OffspringDistribution uniform_dissection() {
  const double mu0 = 2.0 - std::sqrt(2.0);
  const double r = mu0 / 2.0;
  return OffspringDistribution::create({{0, mu0}, {1, 0.0}}, GeometricTail{2, 1, r, r}, true);
}

OffspringDistribution p_angulation(int p) {
  if (p < 3) throw std::invalid_argument("p-angulation requires p >= 3");
  const double top = 1.0 / (p - 1);
  return OffspringDistribution::create({{0, 1.0 - top}, {p - 1, top}}, std::nullopt, true);
}

namespace {

// F(lambda) = sum_{i>=2} i lambda^{i-1} w_i; +inf beyond the tail's radius.
double weighted_derivative_sum(const WeightSequence& weights, double lambda) {
  double sum = 0.0;
  for (const auto& [i, w] : weights.atoms) {
    if (i >= 2) sum += i * std::pow(lambda, i - 1) * w;
  }
  if (weights.tail && weights.tail->first_weight > 0.0) {
    const auto& t = *weights.tail;
    const double q = t.ratio * std::pow(lambda, t.step);
    if (q >= 1.0) return std::numeric_limits<double>::infinity();
    const auto g = geometric_sums(1.0, q);
    sum += t.first_weight * std::pow(lambda, t.start - 1) * (t.start * g.s0 + t.step * g.s1);
  }
  return sum;
}

void validate_weights(const WeightSequence& weights) {
  bool positive = false;
  for (const auto& [i, w] : weights.atoms) {
    if (i < 2) throw std::invalid_argument("face weights are indexed by i >= 2");
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("face weights must be finite and >= 0");
    positive = positive || w > 0.0;
  }
  if (weights.tail) {
    validate_tail(*weights.tail, true);
    if (weights.tail->start < 2) throw std::invalid_argument("face weight tail must start at i >= 2");
    positive = positive || weights.tail->first_weight > 0.0;
  }
  if (!positive) throw std::domain_error("not normalizable: all weights vanish");
}

}  // namespace

double critical_root(const WeightSequence& weights) {
  validate_weights(weights);
  double hi;
  if (weights.tail && weights.tail->first_weight > 0.0 && weights.tail->ratio > 0.0) {
    hi = std::pow(weights.tail->ratio, -1.0 / weights.tail->step);
  } else {
    hi = 1.0;
    while (weighted_derivative_sum(weights, hi) < 1.0) {
      hi *= 2.0;
      if (hi > 1e300) throw std::domain_error("not normalizable: no root found");
    }
  }
  double lo = 0.0;
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (weighted_derivative_sum(weights, mid) < 1.0 ? lo : hi) = mid;
  }
  // Pick whichever bracket end has the smaller residual.
  const double r_lo = std::abs(weighted_derivative_sum(weights, lo) - 1.0);
  const double r_hi = std::abs(weighted_derivative_sum(weights, hi) - 1.0);
  const double lambda = r_lo <= r_hi ? lo : hi;
  if (std::min(r_lo, r_hi) > 1e-14 || lambda <= 0.0) {
    throw std::domain_error("not normalizable: bisection residual " + std::to_string(std::min(r_lo, r_hi)));
  }
  return lambda;
}

OffspringDistribution normalize_to_critical(const WeightSequence& weights) {
  const double lambda = critical_root(weights);
  std::map<int, double> atoms;
  std::optional<GeometricTail> tail;
  double used = 0.0;
  for (const auto& [i, w] : weights.atoms) {
    const double v = std::pow(lambda, i - 1) * w;
    atoms[i] = v;
    used += v;
  }
  if (weights.tail && weights.tail->first_weight > 0.0) {
    const auto& t = *weights.tail;
    GeometricTail scaled{t.start, t.step, t.first_weight * std::pow(lambda, t.start - 1),
                         t.ratio * std::pow(lambda, t.step)};
    used += scaled.first_weight / (1.0 - scaled.ratio);
    tail = scaled;
  }
  atoms[0] = 1.0 - used;
  atoms[1] = 0.0;
  return OffspringDistribution::create(std::move(atoms), tail, true);
}

namespace {

WeightSequence unit_face_weights(const FaceDegreeSet& faces) {
  WeightSequence weights;
  if (const auto* finite = std::get_if<std::set<int>>(&faces)) {
    if (finite->empty()) throw std::invalid_argument("face degree set is empty");
    for (int a : *finite) {
      if (a < 3) throw std::invalid_argument("face degrees must be >= 3");
      weights.atoms[a - 1] = 1.0;
    }
    return weights;
  }
  const auto& prog = std::get<FaceDegreeProgression>(faces);
  if (prog.offset < 3 || prog.step < 1) {
    throw std::invalid_argument("face degree progression needs offset >= 3 and step >= 1");
  }
  if (prog.last) {
    if (*prog.last < prog.offset) throw std::invalid_argument("face degree progression is empty");
    for (int a = prog.offset; a <= *prog.last; a += prog.step) weights.atoms[a - 1] = 1.0;
  } else {
    weights.tail = GeometricTail{prog.offset - 1, prog.step, 1.0, 1.0};
  }
  return weights;
}

}  // namespace

double constrained_root(const FaceDegreeSet& faces) {
  const double r = critical_root(unit_face_weights(faces));
  if (!(r > 0.0 && r < 1.0)) throw std::domain_error("constrained root outside (0,1)");
  return r;
}

OffspringDistribution constrained(const FaceDegreeSet& faces) {
  return normalize_to_critical(unit_face_weights(faces));
}

ScalingConstants scaling_constants(const OffspringDistribution& mu) {
  const double var = mu.variance();
  if (!(var > 0.0)) throw std::domain_error("scaling constants need positive variance");
  if (!(mu.mu0() > 0.0)) throw std::domain_error("scaling constants need mu_0 > 0");
  const double sigma = std::sqrt(var);
  const double even = mu.even_mass();
  ScalingConstants k;
  k.c_tree = 2.0 / (sigma * std::sqrt(mu.mu0()));
  k.c_geo = 0.25 * (var + mu.mu0() * even / (2.0 * even - mu.mu0()));
  k.c = k.c_tree * k.c_geo;
  k.c_loop = (2.0 / sigma) * 0.25 * (var + 4.0 - even);
  k.c_loopbar = (2.0 / sigma) * 0.25 * (var + even);
  return k;
}

double c_geo_series(const OffspringDistribution& mu, double tolerance) {
  // Rows are cut where the certified remaining mass drops below the cutoff;
  // the neglected first moment is then far below `tolerance`.
  const double cutoff = std::min(1e-15, tolerance * 1e-3);
  const auto pi = stationary(mu);
  const auto from_d = joint_step_law(mu, Driving::D, cutoff);
  const auto from_u = joint_step_law(mu, Driving::U, cutoff);
  auto first_moment = [](const TransitionRow& row) {
    double m = 0.0;
    for (std::size_t i = 1; i < row.to_d.size(); ++i) m += static_cast<double>(i) * row.to_d[i];
    for (std::size_t i = 1; i < row.to_u.size(); ++i) m += static_cast<double>(i) * row.to_u[i];
    return m;
  };
  return pi[0] * first_moment(from_d) + pi[1] * first_moment(from_u);
}

}  // namespace dissectree
