#ifndef RABS_PROPAGATION_H_
#define RABS_PROPAGATION_H_

#include "rabs/scenario.h"

namespace rabs {

inline constexpr double kSpeedOfLight = 299792458.0;

double db_to_linear(double db);
double linear_to_db(double linear);

// Free-space reference loss at 1 m: (c / (4 pi f_c))^2.
double reference_gain(const RadioParams& radio);

// Receiver noise power of one RB in watts (noise figure 0 dB).
double rb_noise_power_w(const RadioParams& radio);

// LoS probability of the urban mmWave blockage model; 1 for d <= 18 m.
double los_probability(double distance_m);

// Mean path gain (linear, <= 1) mixing LoS and NLoS exponents by the LoS
// probability.
double pathloss(double distance_m, const RadioParams& radio);

double pathloss_db(double distance_m, const RadioParams& radio);

// Per-RB rate of a beam-aligned backhaul link (antenna gain G^2), capped at
// w0 * SE_max.
double backhaul_unit_rate(double distance_m, const RadioParams& radio);

// Per-RB rate of an access cell evaluated at the cell edge (antenna gain G).
// Uncapped unless radio.cap_access_se is set.
double access_unit_rate(double cell_radius_m, const RadioParams& radio);

struct LinkBudget {
  double distance_m = 0.0;
  double pathloss_linear = 0.0;
  double pathloss_db = 0.0;
  double snr_linear = 0.0;  // backhaul SNR (G^2)
  double unit_rate_bps = 0.0;  // backhaul rate
};

LinkBudget backhaul_link_budget(double distance_m, const RadioParams& radio);

}  // namespace rabs

#endif  // RABS_PROPAGATION_H_
