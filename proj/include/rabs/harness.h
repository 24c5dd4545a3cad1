#ifndef RABS_HARNESS_H_
#define RABS_HARNESS_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rabs/oracle.h"
#include "rabs/planner.h"
#include "rabs/scenario.h"
#include "rabs/traffic.h"

namespace rabs {

// N sites drawn uniformly without replacement from the candidate set, then
// the same relaxed LP, rounding and flow re-solve as the greedy planner.
Plan baseline_random_fixed(const ProblemInstance& inst, std::uint64_t placement_seed,
                           const PlanOptions& options = {});

// Sites sampled by baseline_random_fixed for a seed (sorted).
std::vector<int> random_placement(int site_count, int count, std::uint64_t placement_seed);

// Greedy placement with the RB budget split in advance: at most floor(K/2)
// RBs for access, the remainder for backhaul.
Plan baseline_preallocated(const ProblemInstance& inst, const PlanOptions& options = {});

enum class Method { kGreedy, kExact, kRandomFixed, kPreallocated };

const char* method_name(Method m);  // greedy, exact, random, prealloc
Method parse_method(const std::string& name);

// Scenario, traffic and budgets for a single planning run.
struct PlanConfig {
  Scenario scenario;
  TrafficModel traffic;
  std::optional<DemandVector> demands;  // overrides sampling when present
  int rabs_budget = 6;
  int rb_budget = 300;
  int max_hops = 3;
  std::size_t route_ceiling = kDefaultRouteCeiling;
  PlanOptions options;
  OracleLimits oracle_limits;
  std::uint64_t placement_seed = 0;
};

PlanConfig default_plan_config();
ProblemInstance build_instance(const PlanConfig& config);
Plan run_method(Method method, const ProblemInstance& inst, const PlanConfig& config);

struct ExperimentSpec {
  Scenario scenario;
  double mu_bps = 1.5e8;
  std::vector<double> sigmas{1.0};
  std::vector<std::uint64_t> seeds{0};
  std::vector<int> K{300};
  std::vector<int> N{6};
  std::vector<int> H{3};
  std::vector<Method> methods{Method::kGreedy};
  // Random placement for traffic seed s uses placement seed s + offset.
  std::uint64_t placement_seed_offset = 1'000'003;
  PlanOptions options;
  OracleLimits oracle_limits;
  std::size_t route_ceiling = kDefaultRouteCeiling;
  int threads = 0;  // 0: hardware concurrency
  std::string output;

  void validate() const;
};

struct ResultRow {
  Method method = Method::kGreedy;
  int K = 0;
  int N = 0;
  int H = 0;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  double served_mbps = 0.0;
  double wallclock_ms = 0.0;
  std::vector<int> deployment;
  int sum_y = 0;
  int sum_z = 0;
  bool skipped = false;
  std::string skip_reason;
};

// Runs every (method, K, N, H, sigma, seed) cell, validating each plan
// (InternalError on any violation). Rows come back sorted by
// (method, K, N, H, sigma, seed) regardless of scheduling.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

inline constexpr const char* kCsvHeader =
    "method,K,N,H,sigma,seed,served_mbps,wallclock_ms,sum_y,sum_z,deployment";

// Deployment ids are ';'-separated. Skipped rows carry "NA" as served_mbps
// and "skipped: <reason>" as deployment.
std::string to_csv(const std::vector<ResultRow>& rows);
void write_csv(const std::vector<ResultRow>& rows, const std::string& path);

}  // namespace rabs

#endif  // RABS_HARNESS_H_
