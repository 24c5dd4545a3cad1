#ifndef RABS_SERIALIZE_H_
#define RABS_SERIALIZE_H_

#include <string>

#include <json.hpp>

#include "rabs/harness.h"
#include "rabs/lp.h"
#include "rabs/planner.h"
#include "rabs/propagation.h"
#include "rabs/scenario.h"
#include "rabs/traffic.h"

namespace rabs {

using Json = nlohmann::ordered_json;

Json to_json(const RadioParams& radio);
RadioParams radio_from_json(const Json& j);

// {sites:[{id,x_m,y_m}], macro_bs:{x_m,y_m}, radio:{...}, access_cell_radius_m}
Json to_json(const Scenario& scenario);
Scenario scenario_from_json(const Json& j);

// {"<site_id>": demand_bps, ...}
Json to_json(const DemandVector& demands);
DemandVector demands_from_json(const Json& j, int site_count);
// site_id,demand_mbps
std::string to_csv(const DemandVector& demands);

Json to_json(const LinkBudget& budget);

// {deployment:[ids], backhaul_rbs:[{i,j,rbs}], access_rbs:[{i,rbs}],
//  flows:[{route_index,bps}], served_bps}
Json to_json(const Plan& plan);
Plan plan_from_json(const Json& j);

// Config file: either "scenario" (explicit) or "grid" {side_m, spacing_m,
// anchor, access_cell_radius_m}, plus optional radio, traffic, demands_bps,
// N, K, H, route_ceiling, redistribute_rounding_slack, placement_seed and
// oracle_limits. Missing keys keep the defaults of default_plan_config().
PlanConfig plan_config_from_json(const Json& j);
Json to_json(const PlanConfig& config);

// Same scenario keys as the config, plus traffic {mu_bps, sigmas, seeds |
// replications + seed_base}, K, N, H lists, methods, output.
ExperimentSpec experiment_spec_from_json(const Json& j);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace rabs

#endif  // RABS_SERIALIZE_H_
