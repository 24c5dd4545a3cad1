#include "rabs/oracle.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "rabs/error.h"

namespace rabs {
namespace {

// Allocation variables a deployment can use.
struct DeploymentVars {
  RouteSet routes;
  std::vector<int> edges;  // edge indices used by some route
  std::vector<int> sites;  // sources of some route
  std::vector<int> z_cap;
};

DeploymentVars vars_for(const ProblemInstance& inst, const std::vector<int>& deployment) {
  DeploymentVars v;
  v.routes = routes_within(inst, deployment);
  for (int e = 0; e < inst.topology->edge_count(); ++e) {
    if (!v.routes.by_edge[e].empty()) v.edges.push_back(e);
  }
  for (int s : deployment) {
    if (v.routes.by_source[s].empty()) continue;
    v.sites.push_back(s);
    v.z_cap.push_back(max_access_rbs(inst.demands[s], inst.access_rates_bps[s]));
  }
  return v;
}

// Number of vectors (y, z) with y >= 0, 0 <= z_k <= cap_k, total <= K.
std::uint64_t count_allocations(int edge_vars, const std::vector<int>& z_cap, int budget) {
  // ways[t] = number of assignments so far using exactly t RBs.
  std::vector<double> ways(budget + 1, 0.0);
  ways[0] = 1.0;
  for (int k = 0; k < edge_vars; ++k) {
    for (int t = 1; t <= budget; ++t) ways[t] += ways[t - 1];
  }
  for (int cap : z_cap) {
    std::vector<double> next(budget + 1, 0.0);
    for (int t = 0; t <= budget; ++t) {
      for (int c = 0; c <= std::min(cap, t); ++c) next[t] += ways[t - c];
    }
    ways = std::move(next);
  }
  double total = 0.0;
  for (double w : ways) total += w;
  return total > 1.8e19 ? UINT64_MAX : static_cast<std::uint64_t>(total);
}

void for_each_deployment(int sites, int max_size,
                         const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> current;
  auto rec = [&](auto&& self, int start) -> void {
    fn(current);
    if (static_cast<int>(current.size()) == max_size) return;
    for (int s = start; s < sites; ++s) {
      current.push_back(s);
      self(self, s + 1);
      current.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace

void OracleLimits::validate() const {
  if (max_sites <= 0 || max_K <= 0 || max_routes <= 0 || max_enumerations == 0) {
    throw InvalidConfig("oracle limits must be positive");
  }
}

std::uint64_t count_enumerations(const ProblemInstance& inst) {
  std::uint64_t total = 0;
  for_each_deployment(inst.site_count(), std::min(inst.rabs_budget, inst.site_count()),
                      [&](const std::vector<int>& dep) {
                        const DeploymentVars v = vars_for(inst, dep);
                        const std::uint64_t n = count_allocations(
                            static_cast<int>(v.edges.size()), v.z_cap, inst.rb_budget);
                        total = n > UINT64_MAX - total ? UINT64_MAX : total + n;
                      });
  return total;
}

ExactResult exact_solve(const ProblemInstance& inst, const OracleLimits& limits) {
  inst.validate();
  limits.validate();
  if (inst.site_count() > limits.max_sites) {
    throw RefusedInstance("instance has " + std::to_string(inst.site_count()) +
                              " sites, limit " + std::to_string(limits.max_sites),
                          inst.site_count());
  }
  if (inst.rb_budget > limits.max_K) {
    throw RefusedInstance("K = " + std::to_string(inst.rb_budget) + " exceeds limit " +
                              std::to_string(limits.max_K),
                          inst.rb_budget);
  }
  if (inst.routes->size() > limits.max_routes) {
    throw RefusedInstance("instance has " + std::to_string(inst.routes->size()) +
                              " routes, limit " + std::to_string(limits.max_routes),
                          inst.routes->size());
  }
  const std::uint64_t planned = count_enumerations(inst);
  if (planned > limits.max_enumerations) {
    throw RefusedInstance("enumeration count " + std::to_string(planned) + " exceeds limit " +
                              std::to_string(limits.max_enumerations),
                          static_cast<double>(planned));
  }

  const NetworkTopology& topo = *inst.topology;
  ExactResult result;
  bool have_best = false;
  auto better = [&](double value) {
    const double best = result.plan.served_bps;
    return !have_best || value > best + kPlanTolerance * std::max(best, 1.0);
  };

  for_each_deployment(
      inst.site_count(), std::min(inst.rabs_budget, inst.site_count()),
      [&](const std::vector<int>& dep) {
        const DeploymentVars v = vars_for(inst, dep);
        const int ny = static_cast<int>(v.edges.size());
        const int nz = static_cast<int>(v.sites.size());
        std::vector<int> y(ny, 0), z(nz, 0);
        std::vector<bool> into_mbs(ny);
        for (int k = 0; k < ny; ++k) {
          const Edge& e = topo.edges()[v.edges[k]];
          into_mbs[k] = topo.is_macro_bs(e.i) || topo.is_macro_bs(e.j);
        }

        auto evaluate = [&] {
          ++result.enumerations;
          // Served traffic cannot exceed total access capacity nor the
          // capacity of edges into the macro BS.
          double access_cap = 0.0, gateway_cap = 0.0;
          for (int k = 0; k < nz; ++k) access_cap += z[k] * inst.access_rates_bps[v.sites[k]];
          for (int k = 0; k < ny; ++k) {
            if (into_mbs[k]) gateway_cap += y[k] * topo.edges()[v.edges[k]].unit_backhaul_rate_bps;
          }
          const double bound = std::min(access_cap, gateway_cap);
          if (have_best && !better(bound)) return;
          if (bound <= 0.0 && have_best) return;
          ++result.flow_solves;
          Plan plan = solve_flows(inst, dep, v.routes, v.edges, y, v.sites, z);
          if (better(plan.served_bps)) {
            result.plan = std::move(plan);
            have_best = true;
          }
        };

        // Variables 0..ny-1 are edges, ny..ny+nz-1 are cells.
        auto assign = [&](auto&& self, int var, int left) -> void {
          if (var == ny + nz) {
            evaluate();
            return;
          }
          const int cap = var < ny ? left : std::min(left, v.z_cap[var - ny]);
          int& slot = var < ny ? y[var] : z[var - ny];
          for (int c = 0; c <= cap; ++c) {
            slot = c;
            self(self, var + 1, left - c);
          }
          slot = 0;
        };
        assign(assign, 0, inst.rb_budget);
      });

  if (!have_best) result.plan = Plan{};
  // Served-zero optimum: report the empty deployment (lexicographically first).
  if (result.plan.served_bps <= 0.0) result.plan = Plan{};
  return result;
}

}  // namespace rabs
