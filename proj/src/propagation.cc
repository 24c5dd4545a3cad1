#include "rabs/propagation.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rabs/error.h"

namespace rabs {
namespace {

void require_positive_distance(double d) {
  if (!(d > 0.0) || !std::isfinite(d)) {
    throw DomainError("distance must be positive and finite, got " +
                      std::to_string(d));
  }
}

double snr(double distance_m, const RadioParams& radio, double gain_linear) {
  return radio.per_rb_tx_power_w * pathloss(distance_m, radio) * gain_linear /
         rb_noise_power_w(radio);
}

}  // namespace

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

double reference_gain(const RadioParams& radio) {
  const double r = kSpeedOfLight / (4.0 * std::numbers::pi * radio.carrier_frequency_hz);
  return r * r;
}

double rb_noise_power_w(const RadioParams& radio) {
  // dBm/Hz -> W/Hz
  return db_to_linear(radio.noise_psd_dbm_per_hz - 30.0) * radio.rb_bandwidth_hz;
}

double los_probability(double distance_m) {
  require_positive_distance(distance_m);
  const double decay = std::exp(-distance_m / 36.0);
  return std::min(18.0 / distance_m, 1.0) * (1.0 - decay) + decay;
}

double pathloss(double distance_m, const RadioParams& radio) {
  const double p_los = los_probability(distance_m);
  const double beta = reference_gain(radio);
  return p_los * beta * std::pow(distance_m, -radio.los_exponent) +
         (1.0 - p_los) * beta * std::pow(distance_m, -radio.nlos_exponent);
}

double pathloss_db(double distance_m, const RadioParams& radio) {
  return -linear_to_db(pathloss(distance_m, radio));
}

double backhaul_unit_rate(double distance_m, const RadioParams& radio) {
  const double g = db_to_linear(radio.main_lobe_gain_db);
  const double se = std::log2(1.0 + snr(distance_m, radio, g * g));
  return radio.rb_bandwidth_hz * std::min(radio.se_max_bps_per_hz, se);
}

double access_unit_rate(double cell_radius_m, const RadioParams& radio) {
  const double g = db_to_linear(radio.main_lobe_gain_db);
  double se = std::log2(1.0 + snr(cell_radius_m, radio, g));
  if (radio.cap_access_se) se = std::min(se, radio.se_max_bps_per_hz);
  return radio.rb_bandwidth_hz * se;
}

LinkBudget backhaul_link_budget(double distance_m, const RadioParams& radio) {
  LinkBudget b;
  b.distance_m = distance_m;
  b.pathloss_linear = pathloss(distance_m, radio);
  b.pathloss_db = -linear_to_db(b.pathloss_linear);
  const double g = db_to_linear(radio.main_lobe_gain_db);
  b.snr_linear = snr(distance_m, radio, g * g);
  b.unit_rate_bps = backhaul_unit_rate(distance_m, radio);
  return b;
}

}  // namespace rabs
