#include "rabs/planner.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "rabs/error.h"
#include "rabs/propagation.h"

namespace rabs {
namespace {

constexpr double kMbps = 1e6;
constexpr double kIntegralTolerance = 1e-6;

bool exceeds(double value, double limit) {
  return value > limit + kPlanTolerance * std::max(std::abs(limit), 1.0);
}

std::vector<bool> deployment_mask(int site_count, const std::vector<int>& deployment) {
  std::vector<bool> mask(site_count, false);
  for (int s : deployment) {
    if (s < 0 || s >= site_count) {
      throw InvalidInput("deployed site " + std::to_string(s) + " out of range");
    }
    mask[s] = true;
  }
  return mask;
}

// Edges whose endpoints are both active (macro BS always is).
std::vector<int> active_edges(const NetworkTopology& topo, const std::vector<bool>& mask) {
  std::vector<int> out;
  auto on = [&](int v) { return topo.is_macro_bs(v) || mask[v]; };
  for (int e = 0; e < topo.edge_count(); ++e) {
    const Edge& edge = topo.edges()[e];
    if (on(edge.i) && on(edge.j)) out.push_back(e);
  }
  return out;
}

// Positions of active routes whose every site is deployed.
std::vector<int> usable_routes(const RouteSet& active, const NetworkTopology& topo,
                               const std::vector<bool>& mask) {
  std::vector<int> out;
  for (int r = 0; r < active.size(); ++r) {
    const auto& nodes = active.routes[r];
    if (std::all_of(nodes.begin(), nodes.end(),
                    [&](int v) { return topo.is_macro_bs(v) || mask[v]; })) {
      out.push_back(r);
    }
  }
  return out;
}

Plan assemble_plan(const ProblemInstance& inst, const std::vector<int>& deployment,
                   const RouteSet& active, const std::vector<int>& edges,
                   const std::vector<int>& y, const std::vector<int>& sites,
                   const std::vector<int>& z, const std::vector<int>& route_pos,
                   const std::vector<double>& flows_mbps) {
  Plan plan;
  plan.deployment = deployment;
  std::sort(plan.deployment.begin(), plan.deployment.end());
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (y[k] == 0) continue;
    const Edge& e = inst.topology->edges()[edges[k]];
    plan.backhaul_rbs.push_back({e.i, e.j, y[k]});
  }
  for (std::size_t k = 0; k < sites.size(); ++k) {
    if (z[k] > 0) plan.access_rbs.push_back({sites[k], z[k]});
  }
  for (std::size_t k = 0; k < route_pos.size(); ++k) {
    if (flows_mbps[k] <= 0.0) continue;
    plan.flows.push_back({active.ids[route_pos[k]], flows_mbps[k] * kMbps});
  }
  std::sort(plan.flows.begin(), plan.flows.end(),
            [](const RouteFlow& a, const RouteFlow& b) { return a.route_index < b.route_index; });
  plan.served_bps = 0.0;
  for (const RouteFlow& f : plan.flows) plan.served_bps += f.bps;
  return plan;
}

}  // namespace

void ProblemInstance::validate() const {
  if (!topology || !routes) throw InvalidInput("instance without topology or routes");
  if (rabs_budget < 0 || rb_budget < 0) {
    throw InvalidConfig("RABS and RB budgets must be nonnegative");
  }
  if (max_hops < 1) throw InvalidConfig("max_hops must be >= 1");
  if (demands.size() != site_count() ||
      static_cast<int>(access_rates_bps.size()) != site_count()) {
    throw InvalidInput("demands and access rates must cover exactly the candidate sites");
  }
  for (double d : demands.demands_bps) {
    if (!(d >= 0.0)) throw InvalidInput("demands must be nonnegative");
  }
  for (double r : access_rates_bps) {
    if (!(r > 0.0)) throw InvalidInput("access rates must be positive");
  }
}

ProblemInstance make_instance(const Scenario& scenario, DemandVector demands,
                              int rabs_budget, int rb_budget, int max_hops,
                              std::size_t route_ceiling) {
  ProblemInstance inst;
  auto topo = std::make_shared<NetworkTopology>(build_topology(scenario));
  inst.routes = std::make_shared<RouteSet>(enumerate_routes(*topo, max_hops, route_ceiling));
  inst.topology = std::move(topo);
  inst.demands = std::move(demands);
  inst.access_rates_bps.assign(scenario.site_count(),
                               access_unit_rate(scenario.access_cell_radius_m, scenario.radio));
  inst.rabs_budget = rabs_budget;
  inst.rb_budget = rb_budget;
  inst.max_hops = max_hops;
  inst.validate();
  return inst;
}

ProblemInstance with_demands(const ProblemInstance& base, DemandVector demands,
                             int rabs_budget, int rb_budget) {
  ProblemInstance inst = base;
  inst.demands = std::move(demands);
  inst.rabs_budget = rabs_budget;
  inst.rb_budget = rb_budget;
  inst.validate();
  return inst;
}

int Plan::sum_backhaul_rbs() const {
  int s = 0;
  for (const auto& b : backhaul_rbs) s += b.rbs;
  return s;
}

int Plan::sum_access_rbs() const {
  int s = 0;
  for (const auto& a : access_rbs) s += a.rbs;
  return s;
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kEdgeCapacity: return "edge_capacity";
    case ViolationKind::kEdgeEndpointUndeployed: return "edge_endpoint_undeployed";
    case ViolationKind::kAccessCapacity: return "access_capacity";
    case ViolationKind::kAccessUndeployed: return "access_undeployed";
    case ViolationKind::kDemand: return "demand";
    case ViolationKind::kRabsBudget: return "rabs_budget";
    case ViolationKind::kRbBudget: return "rb_budget";
    case ViolationKind::kNegativeRbs: return "negative_rbs";
    case ViolationKind::kNegativeFlow: return "negative_flow";
    case ViolationKind::kRelayUndeployed: return "relay_undeployed";
    case ViolationKind::kObjectiveMismatch: return "objective_mismatch";
  }
  return "?";
}

int max_access_rbs(double demand_bps, double access_rate_bps) {
  return static_cast<int>(std::floor(demand_bps / access_rate_bps + kIntegralTolerance));
}

std::vector<Violation> validate_plan(const ProblemInstance& inst, const Plan& plan) {
  inst.validate();
  const NetworkTopology& topo = *inst.topology;
  const RouteSet& routes = *inst.routes;
  const int n_sites = inst.site_count();
  std::vector<Violation> out;
  auto add = [&](ViolationKind kind, std::string detail) {
    out.push_back({kind, std::move(detail)});
  };

  std::vector<bool> deployed(n_sites, false);
  for (int s : plan.deployment) {
    if (s < 0 || s >= n_sites) throw InvalidInput("deployment names unknown site " + std::to_string(s));
    if (deployed[s]) throw InvalidInput("site " + std::to_string(s) + " deployed twice");
    deployed[s] = true;
  }
  auto active = [&](int v) { return topo.is_macro_bs(v) || deployed[v]; };

  std::vector<long long> y(topo.edge_count(), 0);
  for (const BackhaulRbs& b : plan.backhaul_rbs) {
    const int e = topo.edge_index(b.i, b.j);
    if (e < 0) {
      throw InvalidInput("backhaul allocation on missing edge (" + std::to_string(b.i) +
                         "," + std::to_string(b.j) + ")");
    }
    if (b.rbs < 0) add(ViolationKind::kNegativeRbs, "edge allocation below zero");
    y[e] += b.rbs;
  }
  std::vector<long long> z(n_sites, 0);
  for (const AccessRbs& a : plan.access_rbs) {
    if (a.site < 0 || a.site >= n_sites) {
      throw InvalidInput("access allocation on unknown site " + std::to_string(a.site));
    }
    if (a.rbs < 0) add(ViolationKind::kNegativeRbs, "access allocation below zero");
    z[a.site] += a.rbs;
  }

  std::vector<double> edge_flow(topo.edge_count(), 0.0);
  std::vector<double> site_flow(n_sites, 0.0);
  double flow_sum = 0.0;
  for (const RouteFlow& f : plan.flows) {
    if (f.route_index < 0 || f.route_index >= routes.size()) {
      throw InvalidInput("flow on unknown route " + std::to_string(f.route_index));
    }
    if (f.bps < 0.0) {
      add(ViolationKind::kNegativeFlow, "route " + std::to_string(f.route_index));
      continue;
    }
    flow_sum += f.bps;
    for (int e : routes.route_edges[f.route_index]) edge_flow[e] += f.bps;
    site_flow[routes.source(f.route_index)] += f.bps;
    if (f.bps > 0.0) {
      const auto& nodes = routes.routes[f.route_index];
      for (std::size_t k = 1; k + 1 < nodes.size(); ++k) {
        if (!deployed[nodes[k]]) {
          add(ViolationKind::kRelayUndeployed,
              "route " + std::to_string(f.route_index) + " relays through site " +
                  std::to_string(nodes[k]));
        }
      }
    }
  }

  for (int e = 0; e < topo.edge_count(); ++e) {
    if (edge_flow[e] <= 0.0) continue;
    const Edge& edge = topo.edges()[e];
    const std::string name = "(" + std::to_string(edge.i) + "," + std::to_string(edge.j) + ")";
    if (!active(edge.i) || !active(edge.j)) {
      add(ViolationKind::kEdgeEndpointUndeployed, "edge " + name + " carries flow");
    }
    if (exceeds(edge_flow[e], static_cast<double>(y[e]) * edge.unit_backhaul_rate_bps)) {
      add(ViolationKind::kEdgeCapacity, "edge " + name);
    }
  }
  for (int s = 0; s < n_sites; ++s) {
    if (site_flow[s] > 0.0 && !deployed[s]) {
      add(ViolationKind::kAccessUndeployed, "site " + std::to_string(s) + " sources flow");
    }
    if (exceeds(site_flow[s], static_cast<double>(z[s]) * inst.access_rates_bps[s])) {
      add(ViolationKind::kAccessCapacity, "site " + std::to_string(s));
    }
    if (exceeds(static_cast<double>(z[s]) * inst.access_rates_bps[s], inst.demands[s])) {
      add(ViolationKind::kDemand, "site " + std::to_string(s));
    }
  }
  if (static_cast<int>(plan.deployment.size()) > inst.rabs_budget) {
    add(ViolationKind::kRabsBudget, std::to_string(plan.deployment.size()) + " sites deployed");
  }
  const long long total_rbs = std::accumulate(y.begin(), y.end(), 0LL) +
                              std::accumulate(z.begin(), z.end(), 0LL);
  if (total_rbs > inst.rb_budget) {
    add(ViolationKind::kRbBudget, std::to_string(total_rbs) + " RBs allocated");
  }
  if (std::abs(plan.served_bps - flow_sum) > kPlanTolerance * std::max(flow_sum, 1.0)) {
    add(ViolationKind::kObjectiveMismatch, "served_bps differs from flow sum");
  }
  return out;
}

GreedyDeployment greedy_deploy(const ProblemInstance& inst) {
  inst.validate();
  const NetworkTopology& topo = *inst.topology;
  GreedyDeployment out;
  std::vector<bool> deployed(inst.site_count(), false);
  std::vector<std::vector<int>> selected_routes;  // positions into inst.routes

  for (int round = 0; round < inst.rabs_budget; ++round) {
    const RouteSet reachable = filter_routes(*inst.routes, topo, deployed);
    int best = -1;
    for (int s = 0; s < inst.site_count(); ++s) {
      if (deployed[s] || reachable.by_source[s].empty()) continue;
      if (best < 0 || inst.demands[s] > inst.demands[best]) best = s;
    }
    if (best < 0) break;
    deployed[best] = true;
    out.order.push_back(best);
    for (int r : reachable.by_source[best]) {
      out.active_routes.routes.push_back(reachable.routes[r]);
      out.active_routes.route_edges.push_back(reachable.route_edges[r]);
      out.active_routes.ids.push_back(reachable.ids[r]);
    }
  }
  rebuild_route_indices(out.active_routes, topo);
  out.deployment = out.order;
  std::sort(out.deployment.begin(), out.deployment.end());
  return out;
}

RelaxedLp build_relaxed_lp(const ProblemInstance& inst,
                           const std::vector<int>& deployment,
                           const RouteSet& active_routes,
                           std::optional<RbPools> pools) {
  inst.validate();
  const NetworkTopology& topo = *inst.topology;
  const std::vector<bool> mask = deployment_mask(inst.site_count(), deployment);

  RelaxedLp lp;
  lp.edge_of_var = active_edges(topo, mask);
  for (int s = 0; s < inst.site_count(); ++s) {
    if (mask[s]) lp.site_of_var.push_back(s);
  }
  lp.route_of_var = usable_routes(active_routes, topo, mask);

  const int ny = static_cast<int>(lp.edge_of_var.size());
  const int nz = static_cast<int>(lp.site_of_var.size());
  const int nf = static_cast<int>(lp.route_of_var.size());
  LpProblem& p = lp.problem;
  p = LpProblem(ny + nz + nf);
  for (int k = 0; k < nf; ++k) p.objective[lp.f_offset() + k] = 1.0;

  std::vector<int> y_var(topo.edge_count(), -1);
  for (int k = 0; k < ny; ++k) y_var[lp.edge_of_var[k]] = k;
  std::vector<int> z_var(inst.site_count(), -1);
  for (int k = 0; k < nz; ++k) z_var[lp.site_of_var[k]] = k;

  std::vector<std::vector<std::pair<int, double>>> edge_rows(ny), site_rows(nz);
  for (int k = 0; k < nf; ++k) {
    const int r = lp.route_of_var[k];
    for (int e : active_routes.route_edges[r]) edge_rows[y_var[e]].push_back({lp.f_offset() + k, 1.0});
    site_rows[z_var[active_routes.source(r)]].push_back({lp.f_offset() + k, 1.0});
  }
  // Route flow over an edge within y-hat * R^bh.
  for (int k = 0; k < ny; ++k) {
    auto terms = std::move(edge_rows[k]);
    terms.push_back({lp.y_offset() + k,
                     -topo.edges()[lp.edge_of_var[k]].unit_backhaul_rate_bps / kMbps});
    p.add_le(terms, 0.0);
  }
  // Sourced flow within z-hat * R^ac, and z-hat * R^ac within demand.
  for (int k = 0; k < nz; ++k) {
    const int s = lp.site_of_var[k];
    const double rate = inst.access_rates_bps[s] / kMbps;
    auto terms = std::move(site_rows[k]);
    terms.push_back({lp.z_offset() + k, -rate});
    p.add_le(terms, 0.0);
    p.add_le({{lp.z_offset() + k, rate}}, inst.demands[s] / kMbps);
  }
  std::vector<std::pair<int, double>> budget, access_pool, backhaul_pool;
  for (int k = 0; k < ny; ++k) {
    budget.push_back({lp.y_offset() + k, 1.0});
    backhaul_pool.push_back({lp.y_offset() + k, 1.0});
  }
  for (int k = 0; k < nz; ++k) {
    budget.push_back({lp.z_offset() + k, 1.0});
    access_pool.push_back({lp.z_offset() + k, 1.0});
  }
  p.add_le(budget, inst.rb_budget);
  if (pools) {
    p.add_le(access_pool, pools->access);
    p.add_le(backhaul_pool, pools->backhaul);
  }
  return lp;
}

Plan solve_flows(const ProblemInstance& inst, const std::vector<int>& deployment,
                 const RouteSet& active_routes, const std::vector<int>& edges,
                 const std::vector<int>& y, const std::vector<int>& sites,
                 const std::vector<int>& z) {
  const NetworkTopology& topo = *inst.topology;
  const std::vector<bool> mask = deployment_mask(inst.site_count(), deployment);
  const std::vector<int> route_pos = usable_routes(active_routes, topo, mask);

  std::vector<int> edge_row(topo.edge_count(), -1);
  for (std::size_t k = 0; k < edges.size(); ++k) edge_row[edges[k]] = static_cast<int>(k);
  std::vector<int> site_row(inst.site_count(), -1);
  for (std::size_t k = 0; k < sites.size(); ++k) site_row[sites[k]] = static_cast<int>(k);

  const int nf = static_cast<int>(route_pos.size());
  LpProblem p(nf);
  std::fill(p.objective.begin(), p.objective.end(), 1.0);
  std::vector<std::vector<std::pair<int, double>>> erows(edges.size()), srows(sites.size());
  std::vector<bool> blocked(nf, false);
  for (int k = 0; k < nf; ++k) {
    const int r = route_pos[k];
    for (int e : active_routes.route_edges[r]) {
      if (edge_row[e] < 0) {
        blocked[k] = true;
      } else {
        erows[edge_row[e]].push_back({k, 1.0});
      }
    }
    const int src = site_row[active_routes.source(r)];
    if (src < 0) {
      blocked[k] = true;
    } else {
      srows[src].push_back({k, 1.0});
    }
  }
  for (std::size_t k = 0; k < edges.size(); ++k) {
    if (erows[k].empty()) continue;
    p.add_le(erows[k], y[k] * topo.edges()[edges[k]].unit_backhaul_rate_bps / kMbps);
  }
  for (std::size_t k = 0; k < sites.size(); ++k) {
    if (srows[k].empty()) continue;
    p.add_le(srows[k], z[k] * inst.access_rates_bps[sites[k]] / kMbps);
  }
  for (int k = 0; k < nf; ++k) {
    if (blocked[k]) p.add_le({{k, 1.0}}, 0.0);
  }
  const LpSolution sol = solve_lp(p);
  if (sol.status != LpStatus::kOptimal) {
    throw InternalError(std::string("flow LP returned ") + to_string(sol.status));
  }
  return assemble_plan(inst, deployment, active_routes, edges, y, sites, z, route_pos,
                       sol.values);
}

namespace {

// Greedy one-RB-at-a-time use of the budget left after rounding down.
Plan redistribute_slack(const ProblemInstance& inst, const std::vector<int>& deployment,
                        const RouteSet& active, const std::vector<int>& edges,
                        std::vector<int> y, const std::vector<int>& sites,
                        std::vector<int> z, std::optional<RbPools> pools, Plan current) {
  auto total = [](const std::vector<int>& v) { return std::accumulate(v.begin(), v.end(), 0); };
  while (total(y) + total(z) < inst.rb_budget) {
    const bool backhaul_room = !pools || total(y) < pools->backhaul;
    const bool access_room = !pools || total(z) < pools->access;
    double best_gain = kPlanTolerance * std::max(current.served_bps, 1.0);
    int best = -1;
    Plan best_plan;
    const int ny = static_cast<int>(edges.size());
    for (int k = 0; k < ny + static_cast<int>(sites.size()); ++k) {
      if (k < ny && !backhaul_room) continue;
      if (k >= ny) {
        if (!access_room) continue;
        const int s = sites[k - ny];
        if (z[k - ny] + 1 > max_access_rbs(inst.demands[s], inst.access_rates_bps[s])) continue;
      }
      int& slot = k < ny ? y[k] : z[k - ny];
      ++slot;
      Plan trial = solve_flows(inst, deployment, active, edges, y, sites, z);
      --slot;
      if (trial.served_bps - current.served_bps > best_gain) {
        best_gain = trial.served_bps - current.served_bps;
        best = k;
        best_plan = std::move(trial);
      }
    }
    if (best < 0) break;
    if (best < ny) {
      ++y[best];
    } else {
      ++z[best - ny];
    }
    current = std::move(best_plan);
  }
  return current;
}

}  // namespace

Plan plan_for_deployment(const ProblemInstance& inst, const std::vector<int>& deployment,
                         const RouteSet& active_routes, std::optional<RbPools> pools,
                         const PlanOptions& options) {
  const RelaxedLp lp = build_relaxed_lp(inst, deployment, active_routes, pools);
  const LpSolution sol = solve_lp(lp.problem);
  if (sol.status != LpStatus::kOptimal) {
    throw InternalError(std::string("relaxed LP returned ") + to_string(sol.status));
  }
  const int ny = static_cast<int>(lp.edge_of_var.size());
  const int nz = static_cast<int>(lp.site_of_var.size());
  bool integral = true;
  for (int k = 0; k < ny + nz; ++k) {
    const double v = sol.values[k];
    if (std::abs(v - std::round(v)) > kIntegralTolerance) integral = false;
  }

  std::vector<int> y(ny), z(nz);
  for (int k = 0; k < ny; ++k) {
    const double v = sol.values[lp.y_offset() + k];
    y[k] = static_cast<int>(integral ? std::round(v) : std::floor(v + kIntegralTolerance));
  }
  for (int k = 0; k < nz; ++k) {
    const double v = sol.values[lp.z_offset() + k];
    const int s = lp.site_of_var[k];
    const int rounded =
        static_cast<int>(integral ? std::round(v) : std::floor(v + kIntegralTolerance));
    z[k] = std::min(rounded, max_access_rbs(inst.demands[s], inst.access_rates_bps[s]));
  }

  Plan plan;
  if (integral) {
    std::vector<double> flows(lp.route_of_var.size());
    for (std::size_t k = 0; k < flows.size(); ++k) flows[k] = sol.values[lp.f_offset() + k];
    plan = assemble_plan(inst, deployment, active_routes, lp.edge_of_var, y, lp.site_of_var, z,
                         lp.route_of_var, flows);
  } else {
    plan = solve_flows(inst, deployment, active_routes, lp.edge_of_var, y, lp.site_of_var, z);
  }
  if (options.redistribute_rounding_slack) {
    plan = redistribute_slack(inst, deployment, active_routes, lp.edge_of_var, y,
                              lp.site_of_var, z, pools, std::move(plan));
  }
  return plan;
}

Plan greedy_solve(const ProblemInstance& inst, const PlanOptions& options) {
  const GreedyDeployment g = greedy_deploy(inst);
  return plan_for_deployment(inst, g.deployment, g.active_routes, std::nullopt, options);
}

RouteSet routes_within(const ProblemInstance& inst, const std::vector<int>& deployment) {
  const std::vector<bool> mask = deployment_mask(inst.site_count(), deployment);
  RouteSet relayed = filter_routes(*inst.routes, *inst.topology, mask);
  RouteSet out;
  for (int r = 0; r < relayed.size(); ++r) {
    if (!mask[relayed.source(r)]) continue;
    out.routes.push_back(relayed.routes[r]);
    out.route_edges.push_back(relayed.route_edges[r]);
    out.ids.push_back(relayed.ids[r]);
  }
  rebuild_route_indices(out, *inst.topology);
  return out;
}

}  // namespace rabs
