#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "rabs/error.h"
#include "rabs/propagation.h"
#include "rabs/topology.h"
#include "test_util.h"

using namespace rabs;
using rabs::testing::complete_pairs;
using rabs::testing::scenario_at;

namespace {

NetworkTopology manual(int sites, const std::vector<std::pair<int, int>>& pairs) {
  std::vector<Edge> edges;
  for (auto [a, b] : pairs) edges.push_back({std::min(a, b), std::max(a, b), 50.0, 9.6e6});
  return NetworkTopology(sites, edges);
}

std::vector<std::vector<int>> as_vec(const RouteSet& s) { return s.routes; }

// Random connected-ish topology over `sites` candidates.
NetworkTopology random_topology(std::mt19937_64& gen, int sites, double density) {
  std::bernoulli_distribution keep(density);
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a <= sites; ++a)
    for (int b = a + 1; b <= sites; ++b)
      if (keep(gen)) pairs.push_back({a, b});
  return manual(sites, pairs);
}

void check_indices(const RouteSet& set, const NetworkTopology& topo) {
  RouteSet copy = set;
  rebuild_route_indices(copy, topo);
  CHECK(copy.by_edge == set.by_edge);
  CHECK(copy.by_source == set.by_source);
}

}  // namespace

TEST_CASE("two nodes 50 m apart are linked") {
  const Scenario s = scenario_at({{50.0, 0.0}});
  const NetworkTopology topo = build_topology(s);
  REQUIRE(topo.edge_count() == 1);
  CHECK(topo.edges()[0].i == 0);
  CHECK(topo.edges()[0].j == 1);
  CHECK(topo.edges()[0].unit_backhaul_rate_bps == backhaul_unit_rate(50.0, s.radio));
}

TEST_CASE("0 dB threshold removes every edge") {
  Scenario s = build_manhattan_grid(250.0, 50.0, RadioParams{});
  s.radio.pathloss_threshold_db = 1e-9;
  CHECK(build_topology(s).edge_count() == 0);
}

TEST_CASE("250 m reference grid is fully connected at 73 GHz") {
  const Scenario s = build_manhattan_grid(250.0, 50.0, RadioParams{});
  const NetworkTopology topo = build_topology(s);
  CHECK(topo.edge_count() == 26 * 25 / 2);
  for (const Edge& e : topo.edges()) {
    CHECK(e.i < e.j);
    CHECK(pathloss_db(e.distance_m, s.radio) <= s.radio.pathloss_threshold_db);
    CHECK(e.unit_backhaul_rate_bps == backhaul_unit_rate(e.distance_m, s.radio));
  }
}

TEST_CASE("threshold prunes long edges on a larger map") {
  Scenario s = scenario_at({{50.0, 0.0}, {5000.0, 0.0}});
  const NetworkTopology topo = build_topology(s);
  CHECK(topo.edge_index(0, 2) >= 0);
  CHECK(topo.edge_index(1, 2) == -1);
  CHECK(topo.edge_index(0, 1) == -1);
}

TEST_CASE("line graph routes") {
  // MBS is node 2; A = 0, B = 1.
  const NetworkTopology topo = manual(2, {{0, 2}, {0, 1}});
  const RouteSet h2 = enumerate_routes(topo, 2);
  CHECK(as_vec(h2) == std::vector<std::vector<int>>{{0, 2}, {1, 0, 2}});
  REQUIRE(h2.by_source[1].size() == 1);
  CHECK(h2.routes[h2.by_source[1][0]] == std::vector<int>{1, 0, 2});
  const RouteSet h1 = enumerate_routes(topo, 1);
  CHECK(as_vec(h1) == std::vector<std::vector<int>>{{0, 2}});
  CHECK(h1.by_source[1].empty());
  CHECK(dump_routes(h2, topo) == "0: 0>MBS\n1: 1>0>MBS\n");
}

TEST_CASE("complete graph on MBS + 3 candidates has 15 routes within 3 hops") {
  // 3 + 6 + 6, from tests/oracles/route_count_oracle.py.
  const NetworkTopology topo = manual(3, complete_pairs(3));
  const RouteSet set = enumerate_routes(topo, 3);
  CHECK(set.size() == 15);
  int by_hops[4] = {0, 0, 0, 0};
  for (int r = 0; r < set.size(); ++r) ++by_hops[set.hops(r)];
  CHECK(by_hops[1] == 3);
  CHECK(by_hops[2] == 6);
  CHECK(by_hops[3] == 6);
  CHECK(std::is_sorted(set.routes.begin(), set.routes.end()));
}

TEST_CASE("invalid hop bound and route ceiling") {
  const NetworkTopology topo = manual(3, complete_pairs(3));
  CHECK_THROWS_AS(enumerate_routes(topo, 0), InvalidConfig);
  CHECK_THROWS_AS(enumerate_routes(topo, 3, 10), InvalidConfig);
}

TEST_CASE("filter keeps routes whose relays are deployed") {
  const NetworkTopology topo = manual(2, {{0, 2}, {0, 1}});
  const RouteSet all = enumerate_routes(topo, 2);
  const RouteSet none = filter_routes(all, topo, {false, false});
  CHECK(as_vec(none) == std::vector<std::vector<int>>{{0, 2}});
  const RouteSet with_a = filter_routes(all, topo, {true, false});
  CHECK(as_vec(with_a) == as_vec(all));
  CHECK(with_a.ids == std::vector<int>{0, 1});

  const NetworkTopology full = manual(4, complete_pairs(4));
  const RouteSet routes = enumerate_routes(full, 3);
  const RouteSet same = filter_routes(routes, full, {true, true, true, true});
  CHECK(as_vec(same) == as_vec(routes));
  const RouteSet one_hop = filter_routes(routes, full, {false, false, false, false});
  for (int r = 0; r < one_hop.size(); ++r) CHECK(one_hop.hops(r) == 1);
  CHECK(one_hop.size() == 4);
  check_indices(one_hop, full);
  CHECK_THROWS_AS(filter_routes(routes, full, {true}), InvalidInput);
}

TEST_CASE("random topologies: simple, bounded, indexed, nested in H") {
  std::mt19937_64 gen(42);
  for (int trial = 0; trial < 50; ++trial) {
    const int sites = 2 + static_cast<int>(gen() % 6);
    const NetworkTopology topo = random_topology(gen, sites, 0.6);
    const RouteSet h3 = enumerate_routes(topo, 3);
    check_indices(h3, topo);
    for (int r = 0; r < h3.size(); ++r) {
      const auto& nodes = h3.routes[r];
      CHECK(std::set<int>(nodes.begin(), nodes.end()).size() == nodes.size());
      CHECK(h3.hops(r) >= 1);
      CHECK(h3.hops(r) <= 3);
      CHECK(nodes.back() == topo.macro_bs());
      for (std::size_t k = 0; k + 1 < nodes.size(); ++k) {
        CHECK(topo.edge_index(nodes[k], nodes[k + 1]) == h3.route_edges[r][k]);
      }
    }
    for (int h = 1; h < 3; ++h) {
      const RouteSet low = enumerate_routes(topo, h);
      std::vector<std::vector<int>> expected;
      for (int r = 0; r < h3.size(); ++r) {
        if (h3.hops(r) <= h) expected.push_back(h3.routes[r]);
      }
      CHECK(low.routes == expected);
    }
  }
}

TEST_CASE("route count is invariant under relabeling sites") {
  std::mt19937_64 gen(8);
  for (int trial = 0; trial < 20; ++trial) {
    const int sites = 5;
    std::vector<std::pair<int, int>> pairs;
    std::bernoulli_distribution keep(0.5);
    for (int a = 0; a <= sites; ++a)
      for (int b = a + 1; b <= sites; ++b)
        if (keep(gen)) pairs.push_back({a, b});
    std::vector<int> perm = {0, 1, 2, 3, 4};
    std::shuffle(perm.begin(), perm.end(), gen);
    perm.push_back(sites);  // macro BS keeps its id
    std::vector<std::pair<int, int>> relabeled;
    for (auto [a, b] : pairs) relabeled.push_back({perm[a], perm[b]});
    CHECK(enumerate_routes(manual(sites, pairs), 3).size() ==
          enumerate_routes(manual(sites, relabeled), 3).size());
  }
}
