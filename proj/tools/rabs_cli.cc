// Command-line front end for the RABS planner.
//
// Exit codes: 0 success, 1 infeasible plan or validation failure,
// 2 invalid input.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rabs/error.h"
#include "rabs/harness.h"
#include "rabs/oracle.h"
#include "rabs/planner.h"
#include "rabs/propagation.h"
#include "rabs/serialize.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 1;
constexpr int kExitInvalid = 2;

rabs::PlanConfig load_config(const std::string& path, std::optional<std::uint64_t> seed) {
  rabs::PlanConfig config = rabs::plan_config_from_json(rabs::read_json_file(path));
  if (seed) {
    config.traffic.seed = *seed;
    config.placement_seed = *seed;
  }
  return config;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << '\n';
  } else {
    rabs::write_text_file(out_path, text + "\n");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Joint RABS placement, RB allocation and multi-hop routing planner"};
  app.require_subcommand(1);

  std::string config_path, out_path, spec_path, instance_path, plan_path, method_name;
  std::optional<std::uint64_t> seed;
  double distance = 0.0;
  int max_hops = 0;

  auto* plan = app.add_subcommand("plan", "Plan one instance with a method");
  plan->add_option("method", method_name, "greedy | exact | random | prealloc")
      ->required()
      ->check(CLI::IsMember({"greedy", "exact", "random", "prealloc"}));
  plan->add_option("--config", config_path, "Instance config (JSON)")->required();
  plan->add_option("--seed", seed, "Traffic and placement seed override");
  plan->add_option("--out", out_path, "Write plan JSON here instead of stdout");

  auto* experiment = app.add_subcommand("experiment", "Run a Monte Carlo sweep");
  experiment->add_option("--spec", spec_path, "Experiment spec (JSON)")->required();
  experiment->add_option("--out", out_path, "CSV output path (overrides spec.output)");

  auto* validate = app.add_subcommand("validate", "Check a plan against an instance");
  validate->add_option("--instance", instance_path, "Instance config (JSON)")->required();
  validate->add_option("--plan", plan_path, "Plan (JSON)")->required();

  auto* linkbudget = app.add_subcommand("linkbudget", "Print the backhaul link budget");
  linkbudget->add_option("--distance", distance, "Link distance in meters")->required();
  linkbudget->add_option("--config", config_path, "Take radio parameters from a config");

  auto* routes = app.add_subcommand("routes", "Dump hop-bounded routes");
  routes->add_option("--config", config_path, "Instance config (JSON)")->required();
  routes->add_option("--max-hops", max_hops, "Hop bound H")->required();

  auto* oracle = app.add_subcommand("oracle", "Exact solve of a tiny instance");
  oracle->add_option("--instance", instance_path, "Instance config (JSON)")->required();

  auto* demands = app.add_subcommand("demands", "Print sampled demands");
  demands->add_option("--config", config_path, "Instance config (JSON)")->required();
  demands->add_option("--seed", seed, "Traffic seed override");
  bool as_csv = false;
  demands->add_flag("--csv", as_csv, "CSV instead of JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*plan) {
      const rabs::PlanConfig config = load_config(config_path, seed);
      const rabs::ProblemInstance inst = rabs::build_instance(config);
      const rabs::Plan result =
          rabs::run_method(rabs::parse_method(method_name), inst, config);
      const auto violations = rabs::validate_plan(inst, result);
      emit(rabs::to_json(result).dump(2), out_path);
      if (!violations.empty()) {
        for (const auto& v : violations) {
          std::cerr << rabs::to_string(v.kind) << ": " << v.detail << '\n';
        }
        return kExitInfeasible;
      }
    } else if (*experiment) {
      rabs::ExperimentSpec spec =
          rabs::experiment_spec_from_json(rabs::read_json_file(spec_path));
      if (!out_path.empty()) spec.output = out_path;
      const auto rows = rabs::run_experiment(spec);
      if (spec.output.empty()) {
        std::cout << rabs::to_csv(rows);
      } else {
        rabs::write_csv(rows, spec.output);
        std::cerr << rows.size() << " rows written to " << spec.output << '\n';
      }
    } else if (*validate) {
      const rabs::PlanConfig config = load_config(instance_path, std::nullopt);
      const rabs::ProblemInstance inst = rabs::build_instance(config);
      const rabs::Plan candidate = rabs::plan_from_json(rabs::read_json_file(plan_path));
      const auto violations = rabs::validate_plan(inst, candidate);
      for (const auto& v : violations) {
        std::cout << rabs::to_string(v.kind) << ": " << v.detail << '\n';
      }
      if (!violations.empty()) return kExitInfeasible;
      std::cout << "feasible\n";
    } else if (*linkbudget) {
      rabs::RadioParams radio;
      if (!config_path.empty()) radio = load_config(config_path, std::nullopt).scenario.radio;
      std::cout << rabs::to_json(rabs::backhaul_link_budget(distance, radio)).dump(2) << '\n';
    } else if (*routes) {
      const rabs::PlanConfig config = load_config(config_path, std::nullopt);
      const rabs::NetworkTopology topo = rabs::build_topology(config.scenario);
      const rabs::RouteSet set = rabs::enumerate_routes(topo, max_hops, config.route_ceiling);
      std::cout << rabs::dump_routes(set, topo);
    } else if (*oracle) {
      const rabs::PlanConfig config = load_config(instance_path, std::nullopt);
      const rabs::ProblemInstance inst = rabs::build_instance(config);
      const rabs::ExactResult r = rabs::exact_solve(inst, config.oracle_limits);
      rabs::Json out = rabs::to_json(r.plan);
      out["enumerations"] = r.enumerations;
      std::cout << out.dump(2) << '\n';
    } else if (*demands) {
      const rabs::PlanConfig config = load_config(config_path, seed);
      const rabs::DemandVector d =
          config.demands ? *config.demands : rabs::sample_demands(config.traffic, config.scenario);
      if (as_csv) {
        std::cout << rabs::to_csv(d);
      } else {
        std::cout << rabs::to_json(d).dump(2) << '\n';
      }
    }
  } catch (const rabs::RefusedInstance& e) {
    std::cerr << "refused: " << e.what() << " (measured " << e.measured() << ")\n";
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {  // InvalidConfig, InvalidInput
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const rabs::InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInfeasible;
  }
  return kExitOk;
}
