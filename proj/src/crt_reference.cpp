#include "dissectree/crt_reference.hpp"

#include <array>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace dissectree {

double diameter_density(double x, int k_max, double tol) {
  if (!(x > 0.0)) throw std::domain_error("diameter_density: x must be positive");
  const double x2 = x * x;
  const double x4 = x2 * x2;
  double sum = 0.0;
  for (int k = 1; k <= k_max; ++k) {
    const double r = 4.0 * std::numbers::pi * k / x;
    const double b = r * r;
    const double e = std::exp(-b);
    const double b2 = b * b, b3 = b2 * b, b4 = b3 * b;
    const double term =
        ((4.0 / x4) * (4.0 * b4 - 36.0 * b3 + 75.0 * b2 - 30.0 * b) + (2.0 / x2) * (4.0 * b3 - 10.0 * b2)) * e;
    sum += term;
    // The polynomial factor can vanish by accident while b is small, so only
    // stop once the exponential has taken over.
    if (b > 50.0 && std::abs(term) < tol * (std::abs(sum) + 1.0)) break;
  }
  return 2.0 * std::sqrt(2.0 * std::numbers::pi) / 3.0 * sum;
}

double diameter_density_cutoff() {
  static const double cutoff = [] {
    double x = 2.0;
    while (x < 200.0) {
      if (std::abs(diameter_density(x)) < 1e-16 && std::abs(diameter_density(x + 0.5)) < 1e-16) return x;
      x += 0.5;
    }
    throw std::runtime_error("diameter density does not decay");
  }();
  return cutoff;
}

double diam_moment(double p) {
  if (!(p >= 0.0)) throw std::domain_error("diam_moment: p must be >= 0");
  const double top = diameter_density_cutoff();
  auto f = [p](double x) { return x <= 0.0 ? 0.0 : std::pow(x, p) * diameter_density(x); };
  static std::mutex lock;
  static std::map<double, double> cache;
  {
    std::lock_guard guard(lock);
    if (auto it = cache.find(p); it != cache.end()) return it->second;
  }
  // Error control is relative to the whole integral; splitting the range
  // would push noise-level pieces to the maximal depth.
  const double total = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, top, 20, 1e-12);
  std::lock_guard guard(lock);
  cache.emplace(p, total);
  return total;
}

namespace {

// (p - 1) zeta(p), finite at p = 1.
double scaled_zeta(double p) {
  const double h = p - 1.0;
  if (std::abs(h) < 1e-6) {
    constexpr double stieltjes1 = -0.0728158454836767;
    return 1.0 + std::numbers::egamma * h - stieltjes1 * h * h;
  }
  return h * std::riemann_zeta(p);
}

}  // namespace

double radius_moment(double p) {
  if (!(p > 0.0)) throw std::domain_error("radius_moment: p must be positive");
  return std::pow(2.0, -p / 2.0) * p * std::tgamma(p / 2.0) * scaled_zeta(p);
}

double height_u_moment(double p) {
  if (!(p > 0.0)) throw std::domain_error("height_u_moment: p must be positive");
  return std::pow(2.0, -p / 2.0) * std::tgamma(1.0 + p / 2.0);
}

namespace {

constexpr std::array<std::pair<Statistic, std::string_view>, 10> kStatisticNames{{
    {Statistic::diameter, "diameter"},
    {Statistic::radius, "radius"},
    {Statistic::height_u, "height_u"},
    {Statistic::tree_diameter, "tree_diameter"},
    {Statistic::distance_slack, "distance_slack"},
    {Statistic::leaf_deviation, "leaf_deviation"},
    {Statistic::loop_diameter, "loop_diameter"},
    {Statistic::loopbar_diameter, "loopbar_diameter"},
    {Statistic::loop_height_u, "loop_height_u"},
    {Statistic::loopbar_height_u, "loopbar_height_u"},
}};

}  // namespace

std::string_view statistic_name(Statistic s) {
  for (const auto& [stat, name] : kStatisticNames) {
    if (stat == s) return name;
  }
  throw std::logic_error("unnamed statistic");
}

Statistic parse_statistic(std::string_view name) {
  for (const auto& [stat, known] : kStatisticNames) {
    if (known == name) return stat;
  }
  throw std::invalid_argument("unknown statistic '" + std::string(name) + "'");
}

std::optional<double> predict(const OffspringDistribution& mu, Statistic s, double p) {
  const auto k = scaling_constants(mu);
  switch (s) {
    case Statistic::diameter:
      return std::pow(k.c, p) * diam_moment(p);
    case Statistic::radius:
      return std::pow(k.c, p) * radius_moment(p);
    case Statistic::height_u:
      return std::pow(k.c, p) * height_u_moment(p);
    case Statistic::tree_diameter:
      return std::pow(k.c_tree, p) * diam_moment(p);
    case Statistic::loop_diameter:
      return std::pow(k.c_loop, p) * diam_moment(p);
    case Statistic::loopbar_diameter:
      return std::pow(k.c_loopbar, p) * diam_moment(p);
    case Statistic::loop_height_u:
      return std::pow(k.c_loop, p) * height_u_moment(p);
    case Statistic::loopbar_height_u:
      return std::pow(k.c_loopbar, p) * height_u_moment(p);
    case Statistic::distance_slack:
    case Statistic::leaf_deviation:
      return std::nullopt;
  }
  return std::nullopt;
}

}  // namespace dissectree
