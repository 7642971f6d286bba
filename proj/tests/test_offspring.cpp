#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dissectree/distribution_json.hpp"
#include "dissectree/offspring.hpp"
#include "dissectree/rng.hpp"

using namespace dissectree;
using doctest::Approx;

namespace {

const double kSqrt2 = std::numbers::sqrt2;
const double kR = (2.0 - kSqrt2) / 2.0;

OffspringDistribution even_faces() { return constrained(FaceDegreeProgression{4, 2, std::nullopt}); }
OffspringDistribution odd_faces() { return constrained(FaceDegreeProgression{3, 2, std::nullopt}); }

std::vector<OffspringDistribution> examples() {
  return {p_angulation(3), p_angulation(4), p_angulation(5), uniform_dissection(), even_faces(), odd_faces()};
}

// Brute-force moments from the first `terms` masses.
struct Brute {
  double mass = 0, mean = 0, second = 0, even = 0, odd = 0;
};
Brute brute(const OffspringDistribution& mu, int terms = 4000) {
  Brute b;
  for (int k = 0; k < terms; ++k) {
    const double p = mu.prob(k);
    b.mass += p;
    b.mean += k * p;
    b.second += double(k) * k * p;
    (k % 2 ? b.odd : b.even) += p;
  }
  return b;
}

}  // namespace

TEST_CASE("uniform dissection law") {
  const auto mu = uniform_dissection();
  CHECK(mu.mu0() == Approx(2.0 - kSqrt2).epsilon(1e-15));
  CHECK(mu.prob(1) == 0.0);
  CHECK(mu.mean() == Approx(1.0).epsilon(1e-12));
  CHECK(mu.variance() == Approx(4.0 * kSqrt2 - 4.0).epsilon(1e-12));
  const auto b = brute(mu);
  CHECK(b.mass == Approx(1.0).epsilon(1e-12));
  CHECK(b.second - 1.0 == Approx(mu.variance()).epsilon(1e-12));
  CHECK(mu.even_mass() == Approx(b.even).epsilon(1e-12));
  CHECK(mu.odd_mass() == Approx(b.odd).epsilon(1e-12));
}

TEST_CASE("p-angulation laws") {
  const auto tri = p_angulation(3);
  CHECK(tri.prob(0) == 0.5);
  CHECK(tri.prob(2) == 0.5);
  CHECK(tri.mean() == Approx(1.0));
  const auto quad = p_angulation(4);
  CHECK(quad.prob(0) == Approx(2.0 / 3.0));
  CHECK(quad.prob(3) == Approx(1.0 / 3.0));
  CHECK_THROWS_AS(p_angulation(2), std::invalid_argument);
}

TEST_CASE("parity and mass invariants hold for every example") {
  for (const auto& mu : examples()) {
    CHECK(mu.total_mass() == Approx(1.0).epsilon(1e-12));
    CHECK(mu.mean() == Approx(1.0).epsilon(1e-12));
    CHECK(mu.even_mass() == Approx(mu.positive_even_mass() + mu.mu0()).epsilon(1e-12));
    CHECK(mu.even_mass() + mu.odd_mass() == Approx(1.0).epsilon(1e-12));
    CHECK(mu.tail_sum(0) == Approx(1.0).epsilon(1e-12));
    for (int k = 0; k < 60; ++k) CHECK(mu.tail_sum(k + 1) <= mu.tail_sum(k) + 1e-16);
  }
}

TEST_CASE("tail sums") {
  CHECK(p_angulation(3).tail_sum(1) == 0.5);
  CHECK(p_angulation(3).tail_sum(3) == 0.0);
  const auto mu = uniform_dissection();
  double direct = 0.0;
  for (int i = 2; i < 200; ++i) direct += mu.prob(i);
  CHECK(mu.tail_sum(2) == Approx(kR / (1.0 - kR)).epsilon(1e-12));
  CHECK(mu.tail_sum(2) == Approx(direct).epsilon(1e-12));
}

TEST_CASE("constrained face degrees") {
  CHECK(constrained_root(std::set<int>{3}) == Approx(0.5).epsilon(1e-14));
  CHECK(constrained(std::set<int>{3}) == p_angulation(3));
  CHECK(constrained_root(FaceDegreeProgression{3, 1, std::nullopt}) == Approx(kR).epsilon(1e-13));
  const auto all = constrained(FaceDegreeProgression{3, 1, std::nullopt});
  const auto uni = uniform_dissection();
  for (int k = 0; k < 40; ++k) CHECK(all.prob(k) == Approx(uni.prob(k)).epsilon(1e-12));
  for (int p = 3; p <= 10; ++p) {
    const auto a = constrained(std::set<int>{p});
    const auto b = p_angulation(p);
    for (int k = 0; k <= p; ++k) CHECK(a.prob(k) == Approx(b.prob(k)).epsilon(1e-12));
  }
  // Bounded progression {4, 6, 8} equals the explicit set.
  const auto prog = constrained(FaceDegreeProgression{4, 2, 8});
  const auto set = constrained(std::set<int>{4, 6, 8});
  for (int k = 0; k < 10; ++k) CHECK(prog.prob(k) == Approx(set.prob(k)).epsilon(1e-12));
  CHECK_THROWS_AS(constrained(std::set<int>{2}), std::invalid_argument);
  CHECK_THROWS_AS(constrained(std::set<int>{}), std::invalid_argument);
}

TEST_CASE("normalize_to_critical") {
  const auto two = normalize_to_critical(WeightSequence{{{2, 1.0}}, std::nullopt});
  CHECK(two.prob(0) == Approx(0.5));
  CHECK(two.prob(2) == Approx(0.5));
  const auto ones = normalize_to_critical(WeightSequence{{}, GeometricTail{2, 1, 1.0, 1.0}});
  for (int k = 0; k < 30; ++k) CHECK(ones.prob(k) == Approx(uniform_dissection().prob(k)).epsilon(1e-12));
  const auto three = normalize_to_critical(WeightSequence{{{3, 2.0}}, std::nullopt});
  CHECK(critical_root(WeightSequence{{{3, 2.0}}, std::nullopt}) == Approx(1.0 / std::sqrt(6.0)).epsilon(1e-13));
  CHECK(three.prob(3) == Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(three.prob(0) == Approx(2.0 / 3.0).epsilon(1e-12));

  // Restricting a critical law to i >= 2 and renormalizing gives it back.
  for (const auto& mu : examples()) {
    WeightSequence w;
    for (const auto& [k, p] : mu.atoms()) {
      if (k >= 2) w.atoms[k] = p;
    }
    w.tail = mu.tail();
    CHECK(critical_root(w) == Approx(1.0).epsilon(1e-12));
    const auto back = normalize_to_critical(w);
    for (int k = 0; k < 30; ++k) CHECK(back.prob(k) == Approx(mu.prob(k)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(normalize_to_critical(WeightSequence{{{2, 0.0}}, std::nullopt}), std::domain_error);
}

TEST_CASE("scaling constants against closed forms") {
  CHECK(scaling_constants(p_angulation(3)).c == Approx(2.0 * kSqrt2 / 3.0).epsilon(1e-12));
  CHECK(scaling_constants(p_angulation(4)).c == Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));
  // (p+1) sqrt(p-1) / (2p) for odd p, p / (2 sqrt(p-1)) for even p.
  for (int p = 3; p <= 9; ++p) {
    const double expected = p % 2 ? (p + 1) * std::sqrt(p - 1.0) / (2.0 * p) : p / (2.0 * std::sqrt(p - 1.0));
    CHECK(scaling_constants(p_angulation(p)).c == Approx(expected).epsilon(1e-12));
  }
  CHECK(scaling_constants(uniform_dissection()).c ==
        Approx((3.0 + kSqrt2) * std::pow(2.0, 0.75) / 7.0).epsilon(1e-12));
  CHECK(scaling_constants(even_faces()).c == Approx(std::sqrt(0.5 + 9.0 / (2.0 * std::sqrt(17.0)))).epsilon(1e-10));
  CHECK(scaling_constants(odd_faces()).c == Approx(1.0547).epsilon(1e-4));
  const auto k = scaling_constants(p_angulation(3));
  CHECK(k.c == k.c_tree * k.c_geo);
  CHECK(k.c_loop == Approx(2.0));
  CHECK(k.c_loopbar == Approx(1.0));
}

TEST_CASE("c_geo series matches the closed form") {
  CHECK(c_geo_series(p_angulation(3)) == Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(c_geo_series(p_angulation(4)) == Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(c_geo_series(uniform_dissection()) == Approx(0.522407).epsilon(1e-6));
  for (const auto& mu : examples()) {
    CHECK(std::abs(c_geo_series(mu, 1e-12) - scaling_constants(mu).c_geo) < 1e-10);
  }
}

TEST_CASE("geometric law on Z_+ for looptrees") {
  const auto mu = distribution_from_json(
      nlohmann::json::parse(R"({"kind":"custom","tail":{"start":0,"step":1,"first_weight":0.5,"ratio":0.5}})"));
  CHECK_FALSE(mu.dissection_mode());
  CHECK(mu.prob(1) == Approx(0.25));
  CHECK(mu.variance() == Approx(2.0).epsilon(1e-12));
  CHECK(mu.even_mass() == Approx(2.0 / 3.0).epsilon(1e-12));
  const auto k = scaling_constants(mu);
  CHECK(k.c_loop == Approx(4.0 * kSqrt2 / 3.0).epsilon(1e-12));
  CHECK(k.c_loopbar == Approx(2.0 * kSqrt2 / 3.0).epsilon(1e-12));
}

TEST_CASE("descriptor validation") {
  CHECK_THROWS_AS(OffspringDistribution::create({{0, 0.5}, {2, 0.4}}, std::nullopt, true), std::invalid_argument);
  CHECK_THROWS_AS(OffspringDistribution::create({{0, 0.6}, {1, 0.0}, {3, 0.4}}, std::nullopt, true),
                  std::invalid_argument);  // mean 1.2
  CHECK_THROWS_AS(OffspringDistribution::create({{0, 0.25}, {1, 0.5}, {2, 0.25}}, std::nullopt, true),
                  std::invalid_argument);  // mass at 1
  CHECK_NOTHROW(OffspringDistribution::create({{0, 0.25}, {1, 0.5}, {2, 0.25}}, std::nullopt, false));
  CHECK_THROWS_AS(distribution_from_json(nlohmann::json::parse(R"({"kind":"nope"})")), std::invalid_argument);
  for (const auto& mu : examples()) {
    const auto back = distribution_from_json(distribution_to_json(mu));
    CHECK(back == mu);
  }
}

TEST_CASE("sampling frequencies") {
  auto rng = make_stream(7, 0, 0);
  const auto tri = p_angulation(3);
  const int draws = 1'000'000;
  int zeros = 0;
  for (int i = 0; i < draws; ++i) zeros += sample_offspring(tri, rng) == 0;
  CHECK(std::abs(zeros - draws / 2.0) < 3.0 * std::sqrt(draws * 0.25));

  for (int i = 0; i < 1000; ++i) {
    const auto s = sample_spine_step(tri, rng);
    CHECK(s.children == 2);
    CHECK((s.spine_child == 1 || s.spine_child == 2));
  }

  const auto uni = uniform_dissection();
  double sum = 0.0;
  for (int i = 0; i < draws; ++i) sum += sample_offspring(uni, rng);
  CHECK(std::abs(sum / draws - 1.0) < 3.0 * std::sqrt(uni.variance() / draws));
}

TEST_CASE("size-biased sampling matches k mu_k") {
  auto rng = make_stream(11, 0, 0);
  for (const auto& mu : {uniform_dissection(), odd_faces(), p_angulation(5)}) {
    const int draws = 400'000;
    std::vector<int> counts(40, 0);
    for (int i = 0; i < draws; ++i) {
      const int c = mu.sample_size_biased(rng);
      if (c < 40) ++counts[c];
    }
    for (int k = 0; k < 12; ++k) {
      const double p = k * mu.prob(k);
      CHECK(std::abs(counts[k] - draws * p) <= 4.0 * std::sqrt(draws * p * (1 - p)) + 1e-9);
    }
  }
}
