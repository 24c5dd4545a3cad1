#include "rabs/scenario.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "rabs/error.h"

namespace rabs {

double euclidean_distance(const Point& a, const Point& b) {
  return std::hypot(a.x_m - b.x_m, a.y_m - b.y_m);
}

void RadioParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidConfig(std::string("radio.") + name + " must be positive");
    }
  };
  positive(carrier_frequency_hz, "carrier_frequency_hz");
  positive(rb_bandwidth_hz, "rb_bandwidth_hz");
  positive(per_rb_tx_power_w, "per_rb_tx_power_w");
  positive(se_max_bps_per_hz, "se_max_bps_per_hz");
  positive(los_exponent, "los_exponent");
  positive(pathloss_threshold_db, "pathloss_threshold_db");
  if (!std::isfinite(noise_psd_dbm_per_hz) || !std::isfinite(main_lobe_gain_db)) {
    throw InvalidConfig("radio: noise and gain must be finite");
  }
  if (nlos_exponent < los_exponent) {
    throw InvalidConfig("radio.nlos_exponent must be >= los_exponent");
  }
}

const Point& Scenario::node_position(int node) const {
  if (node == macro_bs_node()) return macro_bs;
  if (node < 0 || node > site_count()) {
    throw InvalidInput("node id " + std::to_string(node) + " out of range");
  }
  return sites[node].pos;
}

void Scenario::validate() const {
  radio.validate();
  if (!(access_cell_radius_m > 0.0)) {
    throw InvalidConfig("access_cell_radius_m must be positive");
  }
  for (int i = 0; i < site_count(); ++i) {
    if (sites[i].id != i) {
      throw InvalidConfig("site ids must be dense and ordered; found id " +
                          std::to_string(sites[i].id) + " at position " +
                          std::to_string(i));
    }
    if (sites[i].pos == macro_bs) {
      throw InvalidConfig("site " + std::to_string(i) +
                          " coincides with the macro BS");
    }
  }
}

Scenario build_manhattan_grid(double side_m, double spacing_m,
                              const RadioParams& radio,
                              double access_cell_radius_m, GridAnchor anchor) {
  if (!(side_m > 0.0) || !(spacing_m > 0.0)) {
    throw InvalidConfig("grid side and spacing must be positive");
  }
  const double cells = side_m / spacing_m;
  const double rounded = std::round(cells);
  if (rounded < 1.0 || std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells)) {
    throw InvalidConfig("spacing must divide the side into an integer lattice");
  }
  const int n = static_cast<int>(rounded);

  Scenario s;
  s.macro_bs = {0.0, 0.0};
  s.access_cell_radius_m = access_cell_radius_m;
  s.radio = radio;

  const bool centered = anchor == GridAnchor::kCellCenter;
  const int per_axis = centered ? n : n + 1;
  const double offset = centered ? spacing_m / 2.0 : 0.0;
  for (int row = 0; row < per_axis; ++row) {
    for (int col = 0; col < per_axis; ++col) {
      Point p{offset + col * spacing_m, offset + row * spacing_m};
      if (p == s.macro_bs) continue;
      s.sites.push_back({s.site_count(), p});
    }
  }
  s.validate();
  return s;
}

}  // namespace rabs
