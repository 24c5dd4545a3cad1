#include "rabs/harness.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>
#include <tuple>

#include "rabs/error.h"
#include "rabs/propagation.h"

namespace rabs {

std::vector<int> random_placement(int site_count, int count, std::uint64_t placement_seed) {
  std::vector<int> ids(site_count);
  std::iota(ids.begin(), ids.end(), 0);
  count = std::clamp(count, 0, site_count);
  std::mt19937_64 gen(placement_seed);
  std::shuffle(ids.begin(), ids.end(), gen);
  ids.resize(count);
  std::sort(ids.begin(), ids.end());
  return ids;
}

Plan baseline_random_fixed(const ProblemInstance& inst, std::uint64_t placement_seed,
                           const PlanOptions& options) {
  inst.validate();
  const std::vector<int> deployment =
      random_placement(inst.site_count(), inst.rabs_budget, placement_seed);
  return plan_for_deployment(inst, deployment, routes_within(inst, deployment), std::nullopt,
                             options);
}

Plan baseline_preallocated(const ProblemInstance& inst, const PlanOptions& options) {
  const GreedyDeployment g = greedy_deploy(inst);
  RbPools pools;
  pools.access = inst.rb_budget / 2;
  pools.backhaul = inst.rb_budget - pools.access;
  return plan_for_deployment(inst, g.deployment, g.active_routes, pools, options);
}

const char* method_name(Method m) {
  switch (m) {
    case Method::kGreedy: return "greedy";
    case Method::kExact: return "exact";
    case Method::kRandomFixed: return "random";
    case Method::kPreallocated: return "prealloc";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "greedy") return Method::kGreedy;
  if (name == "exact") return Method::kExact;
  if (name == "random" || name == "random_fixed") return Method::kRandomFixed;
  if (name == "prealloc" || name == "preallocated") return Method::kPreallocated;
  throw InvalidConfig("unknown method '" + name + "'");
}

PlanConfig default_plan_config() {
  PlanConfig c;
  c.scenario = build_manhattan_grid(250.0, 50.0, RadioParams{});
  return c;
}

ProblemInstance build_instance(const PlanConfig& config) {
  DemandVector demands = config.demands ? *config.demands
                                        : sample_demands(config.traffic, config.scenario);
  if (demands.size() != config.scenario.site_count()) {
    throw InvalidInput("demand vector does not match the scenario's site count");
  }
  return make_instance(config.scenario, std::move(demands), config.rabs_budget,
                       config.rb_budget, config.max_hops, config.route_ceiling);
}

Plan run_method(Method method, const ProblemInstance& inst, const PlanConfig& config) {
  switch (method) {
    case Method::kGreedy: return greedy_solve(inst, config.options);
    case Method::kExact: return exact_solve(inst, config.oracle_limits).plan;
    case Method::kRandomFixed: return baseline_random_fixed(inst, config.placement_seed, config.options);
    case Method::kPreallocated: return baseline_preallocated(inst, config.options);
  }
  throw InternalError("unhandled method");
}

void ExperimentSpec::validate() const {
  scenario.validate();
  if (!(mu_bps > 0.0)) throw InvalidConfig("mu_bps must be positive");
  if (sigmas.empty() || seeds.empty() || K.empty() || N.empty() || H.empty() ||
      methods.empty()) {
    throw InvalidConfig("experiment sweep lists must be nonempty");
  }
  for (int k : K) if (k < 0) throw InvalidConfig("K must be nonnegative");
  for (int n : N) if (n < 0) throw InvalidConfig("N must be nonnegative");
  for (int h : H) if (h < 1) throw InvalidConfig("H must be >= 1");
  for (double s : sigmas) if (!(s >= 0.0)) throw InvalidConfig("sigma must be nonnegative");
}

namespace {

struct Cell {
  Method method;
  int K, N, H;
  double sigma;
  std::uint64_t seed;
};

auto sort_key(const ResultRow& r) {
  return std::make_tuple(static_cast<int>(r.method), r.K, r.N, r.H, r.sigma, r.seed);
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
  spec.validate();

  // Topology and routes depend only on H; build them once.
  std::map<int, ProblemInstance> bases;
  for (int h : spec.H) {
    if (bases.count(h)) continue;
    DemandVector zero{std::vector<double>(spec.scenario.site_count(), 0.0)};
    bases.emplace(h, make_instance(spec.scenario, zero, 0, 0, h, spec.route_ceiling));
  }

  std::vector<Cell> cells;
  for (Method m : spec.methods)
    for (int k : spec.K)
      for (int n : spec.N)
        for (int h : spec.H)
          for (double s : spec.sigmas)
            for (std::uint64_t seed : spec.seeds) cells.push_back({m, k, n, h, s, seed});

  std::vector<ResultRow> rows(cells.size());
  std::vector<std::string> failures(cells.size());
  auto run_cell = [&](std::size_t idx) {
    const Cell& c = cells[idx];
    ResultRow& row = rows[idx];
    row.method = c.method;
    row.K = c.K;
    row.N = c.N;
    row.H = c.H;
    row.sigma = c.sigma;
    row.seed = c.seed;
    TrafficModel traffic{spec.mu_bps, c.sigma, c.seed};
    const ProblemInstance inst =
        with_demands(bases.at(c.H), sample_demands(traffic, spec.scenario), c.N, c.K);
    const auto start = std::chrono::steady_clock::now();
    Plan plan;
    try {
      switch (c.method) {
        case Method::kGreedy: plan = greedy_solve(inst, spec.options); break;
        case Method::kExact: plan = exact_solve(inst, spec.oracle_limits).plan; break;
        case Method::kRandomFixed:
          plan = baseline_random_fixed(inst, c.seed + spec.placement_seed_offset, spec.options);
          break;
        case Method::kPreallocated: plan = baseline_preallocated(inst, spec.options); break;
      }
    } catch (const RefusedInstance& e) {
      row.skipped = true;
      row.skip_reason = e.what();
      return;
    }
    row.wallclock_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
    const auto violations = validate_plan(inst, plan);
    if (!violations.empty()) {
      failures[idx] = std::string(method_name(c.method)) + " plan violates " +
                      to_string(violations.front().kind) + ": " + violations.front().detail;
      return;
    }
    row.served_mbps = plan.served_bps / 1e6;
    row.deployment = plan.deployment;
    row.sum_y = plan.sum_backhaul_rbs();
    row.sum_z = plan.sum_access_rbs();
  };

  int threads = spec.threads > 0 ? spec.threads
                                 : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min<int>(threads, static_cast<int>(cells.size()));
  std::atomic<std::size_t> next{0};
  std::vector<std::string> errors(std::max(threads, 1));
  auto worker = [&](int w) {
    try {
      for (std::size_t i = next++; i < cells.size(); i = next++) run_cell(i);
    } catch (const std::exception& e) {
      errors[w] = e.what();
      next = cells.size();
    }
  };
  if (threads <= 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw InternalError("experiment cell failed: " + e);
  }
  for (const auto& f : failures) {
    if (!f.empty()) throw InternalError(f);
  }

  std::stable_sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
    return sort_key(a) < sort_key(b);
  });
  return rows;
}

std::string to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  os << kCsvHeader << '\n';
  char buf[64];
  for (const ResultRow& r : rows) {
    os << method_name(r.method) << ',' << r.K << ',' << r.N << ',' << r.H << ',';
    std::snprintf(buf, sizeof buf, "%g", r.sigma);
    os << buf << ',' << r.seed << ',';
    if (r.skipped) {
      os << "NA,";
    } else {
      std::snprintf(buf, sizeof buf, "%.6f", r.served_mbps);
      os << buf << ',';
    }
    std::snprintf(buf, sizeof buf, "%.3f", r.wallclock_ms);
    os << buf << ',' << r.sum_y << ',' << r.sum_z << ',';
    if (r.skipped) {
      std::string reason = r.skip_reason;
      std::replace(reason.begin(), reason.end(), ',', ';');
      os << "skipped: " << reason;
    } else {
      for (std::size_t k = 0; k < r.deployment.size(); ++k) {
        if (k) os << ';';
        os << r.deployment[k];
      }
    }
    os << '\n';
  }
  return os.str();
}

void write_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open " + path + " for writing");
  out << to_csv(rows);
}

}  // namespace rabs
