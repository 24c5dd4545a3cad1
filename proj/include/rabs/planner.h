#ifndef RABS_PLANNER_H_
#define RABS_PLANNER_H_

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rabs/lp.h"
#include "rabs/scenario.h"
#include "rabs/topology.h"
#include "rabs/traffic.h"

namespace rabs {

// Everything a solver needs. Topology and the full route set are shared so
// that sweeps over demands or budgets do not re-enumerate routes.
struct ProblemInstance {
  std::shared_ptr<const NetworkTopology> topology;
  std::shared_ptr<const RouteSet> routes;
  DemandVector demands;
  std::vector<double> access_rates_bps;  // R^ac per site
  int rabs_budget = 0;                   // N
  int rb_budget = 0;                     // K
  int max_hops = 1;                      // H

  int site_count() const { return topology->site_count(); }
  void validate() const;
};

ProblemInstance make_instance(const Scenario& scenario, DemandVector demands,
                              int rabs_budget, int rb_budget, int max_hops,
                              std::size_t route_ceiling = kDefaultRouteCeiling);

// Same topology and routes, different demands/budgets.
ProblemInstance with_demands(const ProblemInstance& base, DemandVector demands,
                             int rabs_budget, int rb_budget);

struct BackhaulRbs {
  int i = 0;
  int j = 0;
  int rbs = 0;
  bool operator==(const BackhaulRbs&) const = default;
};

struct AccessRbs {
  int site = 0;
  int rbs = 0;
  bool operator==(const AccessRbs&) const = default;
};

struct RouteFlow {
  int route_index = 0;  // index into ProblemInstance::routes
  double bps = 0.0;
  bool operator==(const RouteFlow&) const = default;
};

// Integer deployment and RB allocation plus route flows. Entries with zero
// RBs or zero flow are omitted.
struct Plan {
  std::vector<int> deployment;  // sorted site ids
  std::vector<BackhaulRbs> backhaul_rbs;
  std::vector<AccessRbs> access_rbs;
  std::vector<RouteFlow> flows;
  double served_bps = 0.0;

  int sum_backhaul_rbs() const;
  int sum_access_rbs() const;
  bool operator==(const Plan&) const = default;
};

enum class ViolationKind {
  kEdgeCapacity,         // route flow over an edge exceeds y * R^bh
  kEdgeEndpointUndeployed,  // flow on an edge with an undeployed endpoint
  kAccessCapacity,       // flow sourced at a site exceeds z * R^ac
  kAccessUndeployed,     // flow sourced at an undeployed site
  kDemand,               // z * R^ac exceeds D
  kRabsBudget,           // more than N deployed sites
  kRbBudget,             // more than K RBs in total
  kNegativeRbs,
  kNegativeFlow,
  kRelayUndeployed,      // positive flow relayed through an undeployed site
  kObjectiveMismatch,    // served_bps differs from the flow sum
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string detail;
};

// Relative tolerance on flow and capacity comparisons.
inline constexpr double kPlanTolerance = 1e-6;

// Every constraint of the joint placement/allocation/flow problem. Empty
// result means feasible. Unknown sites, edges or route indices throw
// InvalidInput.
std::vector<Violation> validate_plan(const ProblemInstance& inst, const Plan& plan);

// Largest integer z with z * R^ac <= D (with a 1e-6 RB slack for round-off).
int max_access_rbs(double demand_bps, double access_rate_bps);

struct GreedyDeployment {
  std::vector<int> deployment;  // sorted site ids
  std::vector<int> order;       // selection order
  RouteSet active_routes;       // accumulated per-site route sets, ids into inst.routes
};

// Deploys up to N sites one at a time: each round considers routes that relay
// only through already-deployed sites, and picks the undeployed reachable
// source with the largest demand (lowest id on ties). Stops early when no
// source is reachable.
GreedyDeployment greedy_deploy(const ProblemInstance& inst);

// Optional caps on the access and backhaul RB pools.
struct RbPools {
  int access = 0;
  int backhaul = 0;
};

// Column layout of the relaxed problem. Rates and flows are in Mbps inside
// the LP to keep coefficients near unity.
struct RelaxedLp {
  LpProblem problem;
  std::vector<int> edge_of_var;   // y-hat columns [0, edges)
  std::vector<int> site_of_var;   // z-hat columns [edges, edges + sites)
  std::vector<int> route_of_var;  // flow columns, positions in active_routes
  int y_offset() const { return 0; }
  int z_offset() const { return static_cast<int>(edge_of_var.size()); }
  int f_offset() const { return z_offset() + static_cast<int>(site_of_var.size()); }
};

// Continuous relaxation with the deployment fixed. Variables touching an
// undeployed site are fixed at zero by omission; the RB budget row implies
// the per-variable caps y-hat <= K and z-hat <= K.
RelaxedLp build_relaxed_lp(const ProblemInstance& inst,
                           const std::vector<int>& deployment,
                           const RouteSet& active_routes,
                           std::optional<RbPools> pools = std::nullopt);

struct PlanOptions {
  // Hands leftover RBs after rounding down to the edge or cell that raises
  // the served traffic most, one RB at a time.
  bool redistribute_rounding_slack = false;
};

// Solves the relaxed LP for a fixed deployment, rounds RBs down when the
// optimum is fractional, and re-solves flows on the rounded capacities.
Plan plan_for_deployment(const ProblemInstance& inst,
                         const std::vector<int>& deployment,
                         const RouteSet& active_routes,
                         std::optional<RbPools> pools = std::nullopt,
                         const PlanOptions& options = {});

// Max-flow over active routes with integer capacities held fixed.
// y is indexed like `edges`, z like `sites`.
Plan solve_flows(const ProblemInstance& inst, const std::vector<int>& deployment,
                 const RouteSet& active_routes, const std::vector<int>& edges,
                 const std::vector<int>& y, const std::vector<int>& sites,
                 const std::vector<int>& z);

// greedy_deploy followed by plan_for_deployment.
Plan greedy_solve(const ProblemInstance& inst, const PlanOptions& options = {});

// Routes of inst.routes whose sources and relays are all in `deployment`.
RouteSet routes_within(const ProblemInstance& inst, const std::vector<int>& deployment);

}  // namespace rabs

#endif  // RABS_PLANNER_H_
