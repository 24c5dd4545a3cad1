#ifndef RABS_ORACLE_H_
#define RABS_ORACLE_H_

#include <cstdint>

#include "rabs/planner.h"

namespace rabs {

struct OracleLimits {
  int max_sites = 9;
  int max_K = 8;
  int max_routes = 200;
  std::uint64_t max_enumerations = 10'000'000;

  void validate() const;
};

struct ExactResult {
  Plan plan;
  std::uint64_t enumerations = 0;  // integer allocations considered
  std::uint64_t flow_solves = 0;   // allocations that reached the flow LP
};

// Number of (deployment, allocation) pairs exact_solve would visit.
std::uint64_t count_enumerations(const ProblemInstance& inst);

// Ground truth by enumeration: every deployment of at most N sites, every
// integer RB allocation over the edges and cells its routes use (sum <= K,
// z_i <= floor(D_i / R^ac_i)), and a flow LP per allocation. Deployments are
// visited in lexicographic order and only a strictly better value replaces the
// incumbent, so ties resolve to the lexicographically smallest deployment.
// Throws RefusedInstance when the instance exceeds `limits`.
ExactResult exact_solve(const ProblemInstance& inst, const OracleLimits& limits = {});

}  // namespace rabs

#endif  // RABS_ORACLE_H_
