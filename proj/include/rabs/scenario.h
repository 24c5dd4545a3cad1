#ifndef RABS_SCENARIO_H_
#define RABS_SCENARIO_H_

#include <vector>

namespace rabs {

struct Point {
  double x_m = 0.0;
  double y_m = 0.0;
  bool operator==(const Point&) const = default;
};

double euclidean_distance(const Point& a, const Point& b);

// Radio constants shared by every node. Defaults are the 73 GHz mmWave
// configuration used throughout the planner.
struct RadioParams {
  double carrier_frequency_hz = 73e9;
  double rb_bandwidth_hz = 2e6;
  double per_rb_tx_power_w = 0.1;
  double noise_psd_dbm_per_hz = -174.0;
  double se_max_bps_per_hz = 4.8;
  double main_lobe_gain_db = 20.0;
  double los_exponent = 2.0;
  double nlos_exponent = 3.0;
  double pathloss_threshold_db = 150.0;
  // Applies the SE_max cap to access links as well (off: access is uncapped).
  bool cap_access_se = false;

  // Throws InvalidConfig when an invariant does not hold.
  void validate() const;
  bool operator==(const RadioParams&) const = default;
};

struct Site {
  int id = 0;
  Point pos;
  bool operator==(const Site&) const = default;
};

// Candidate lamppost sites plus the macro BS. Site ids are dense in
// [0, sites.size()); the macro BS is addressed as node sites.size() by the
// topology layer.
struct Scenario {
  std::vector<Site> sites;
  Point macro_bs;
  double access_cell_radius_m = 25.0;
  RadioParams radio;

  int site_count() const { return static_cast<int>(sites.size()); }
  int macro_bs_node() const { return site_count(); }
  // Position of a node id, including the macro BS sentinel.
  const Point& node_position(int node) const;

  void validate() const;
  bool operator==(const Scenario&) const = default;
};

enum class GridAnchor {
  kCellCenter,    // lattice points at spacing/2 + k*spacing
  kCornerAnchored,  // lattice points at k*spacing, 0..side inclusive
};

// Square lamppost lattice with the macro BS at the origin. Sites are listed
// row-major: y ascending, then x ascending. An origin-coincident lattice
// point is dropped because the macro BS occupies it.
Scenario build_manhattan_grid(double side_m, double spacing_m,
                              const RadioParams& radio,
                              double access_cell_radius_m = 25.0,
                              GridAnchor anchor = GridAnchor::kCellCenter);

}  // namespace rabs

#endif  // RABS_SCENARIO_H_
