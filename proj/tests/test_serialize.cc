#include <doctest.h>

#include <random>

#include "rabs/error.h"
#include "rabs/serialize.h"

using namespace rabs;

TEST_CASE("scenario JSON round-trips with the fixed key names") {
  RadioParams radio;
  radio.cap_access_se = true;
  const Scenario s = build_manhattan_grid(250.0, 50.0, radio, 30.0);
  const Json j = to_json(s);
  CHECK(j.contains("sites"));
  CHECK(j["sites"][3].contains("x_m"));
  CHECK(j["macro_bs"]["y_m"] == 0.0);
  CHECK(j["access_cell_radius_m"] == 30.0);
  CHECK(scenario_from_json(Json::parse(j.dump())) == s);
  CHECK(to_json(scenario_from_json(j)).dump() == j.dump());
}

TEST_CASE("plan JSON round-trips") {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> bps(0.0, 1e8);
  for (int trial = 0; trial < 10; ++trial) {
    Plan p;
    p.deployment = {1, 4, 9};
    p.backhaul_rbs = {{1, 25, static_cast<int>(gen() % 20)}, {4, 9, 3}};
    p.access_rbs = {{1, 2}, {9, static_cast<int>(gen() % 5)}};
    p.flows = {{3, bps(gen)}, {17, bps(gen)}};
    p.served_bps = p.flows[0].bps + p.flows[1].bps;
    CHECK(plan_from_json(Json::parse(to_json(p).dump())) == p);
  }
  const Json j = to_json(Plan{});
  for (const char* key : {"deployment", "backhaul_rbs", "access_rbs", "flows", "served_bps"}) {
    CHECK(j.contains(key));
  }
}

TEST_CASE("demand vector JSON and CSV") {
  const DemandVector d{{1.5e8, 2.5e6}};
  const Json j = to_json(d);
  CHECK(j["0"] == 1.5e8);
  CHECK(demands_from_json(j, 2) == d);
  CHECK(to_csv(d) == "site_id,demand_mbps\n0,150\n1,2.5\n");
  CHECK_THROWS_AS(demands_from_json(j, 3), InvalidInput);
  CHECK_THROWS_AS(demands_from_json(Json{{"x", 1.0}}, 1), InvalidInput);
}

TEST_CASE("plan config from a grid section") {
  const PlanConfig c = plan_config_from_json(Json::parse(R"({
    "grid": {"side_m": 100, "spacing_m": 50, "anchor": "corner"},
    "radio": {"carrier_frequency_hz": 28e9},
    "traffic": {"mu_bps": 1e8, "sigma": 0.5, "seed": 12},
    "N": 2, "K": 30, "H": 2, "redistribute_rounding_slack": true
  })"));
  CHECK(c.scenario.site_count() == 8);
  CHECK(c.scenario.radio.carrier_frequency_hz == 28e9);
  CHECK(c.traffic.seed == 12);
  CHECK(c.rabs_budget == 2);
  CHECK(c.options.redistribute_rounding_slack);
  const PlanConfig back = plan_config_from_json(to_json(c));
  CHECK(back.scenario == c.scenario);
  CHECK(back.rb_budget == 30);
}

TEST_CASE("malformed configs are invalid") {
  CHECK_THROWS_AS(plan_config_from_json(Json::parse(R"({"H": 0})")), InvalidConfig);
  CHECK_THROWS_AS(plan_config_from_json(Json::parse(R"({"grid": {"anchor": "diagonal"}})")),
                  InvalidConfig);
  CHECK_THROWS_AS(plan_config_from_json(Json::parse(R"({"N": "six"})")), InvalidConfig);
}

TEST_CASE("experiment spec with replications") {
  const ExperimentSpec s = experiment_spec_from_json(Json::parse(R"({
    "traffic": {"sigmas": [0.5, 1.5], "replications": 3, "seed_base": 10},
    "K": [100, 200], "N": 4, "H": [1, 4], "methods": ["greedy", "random"]
  })"));
  CHECK(s.seeds == std::vector<std::uint64_t>{10, 11, 12});
  CHECK(s.N == std::vector<int>{4});
  CHECK(s.methods.size() == 2);
  CHECK(s.scenario.site_count() == 25);
}
