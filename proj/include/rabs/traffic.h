#ifndef RABS_TRAFFIC_H_
#define RABS_TRAFFIC_H_

#include <cstdint>
#include <vector>

#include "rabs/scenario.h"

namespace rabs {

struct TrafficModel {
  double mu_bps = 1.5e8;  // linear-scale mean demand per site
  double sigma = 1.0;     // log-scale standard deviation
  std::uint64_t seed = 0;

  void validate() const;
};

// D_i indexed by site id.
struct DemandVector {
  std::vector<double> demands_bps;

  int size() const { return static_cast<int>(demands_bps.size()); }
  double operator[](int site) const { return demands_bps[site]; }
  double total() const;
  bool operator==(const DemandVector&) const = default;
};

// Standard normal draw keyed only by (seed, site id), so a site's demand does
// not depend on how many other sites exist or their order.
double site_standard_normal(std::uint64_t seed, int site_id);

// D_i = exp(ln(mu) - sigma^2/2 + sigma * Z_i), Z_i from site_standard_normal.
// E[D_i] = mu for every sigma.
DemandVector sample_demands(const TrafficModel& model, const Scenario& scenario);

}  // namespace rabs

#endif  // RABS_TRAFFIC_H_
