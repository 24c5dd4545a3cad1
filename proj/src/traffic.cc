#include "rabs/traffic.h"

#include <cmath>
#include <numeric>
#include <random>

#include "rabs/error.h"

namespace rabs {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

void TrafficModel::validate() const {
  if (!(mu_bps > 0.0) || !std::isfinite(mu_bps)) {
    throw InvalidConfig("traffic.mu_bps must be positive");
  }
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw InvalidConfig("traffic.sigma must be nonnegative");
  }
}

double DemandVector::total() const {
  return std::accumulate(demands_bps.begin(), demands_bps.end(), 0.0);
}

double site_standard_normal(std::uint64_t seed, int site_id) {
  const std::uint64_t key =
      splitmix64(splitmix64(seed) ^ static_cast<std::uint64_t>(site_id));
  std::mt19937_64 gen(key);
  std::normal_distribution<double> normal(0.0, 1.0);
  return normal(gen);
}

DemandVector sample_demands(const TrafficModel& model, const Scenario& scenario) {
  model.validate();
  const double location = std::log(model.mu_bps) - 0.5 * model.sigma * model.sigma;
  DemandVector out;
  out.demands_bps.reserve(scenario.sites.size());
  for (const Site& site : scenario.sites) {
    if (model.sigma == 0.0) {
      out.demands_bps.push_back(model.mu_bps);
      continue;
    }
    const double z = site_standard_normal(model.seed, site.id);
    out.demands_bps.push_back(std::exp(location + model.sigma * z));
  }
  return out;
}

}  // namespace rabs
