#include "rabs/topology.h"

#include <algorithm>
#include <sstream>

#include "rabs/error.h"
#include "rabs/propagation.h"

namespace rabs {

NetworkTopology::NetworkTopology(int site_count, std::vector<Edge> edges)
    : site_count_(site_count), edges_(std::move(edges)) {
  const int n = node_count();
  adjacency_.assign(n, {});
  edge_lookup_.assign(static_cast<std::size_t>(n) * n, -1);
  for (int e = 0; e < edge_count(); ++e) {
    const Edge& edge = edges_[e];
    if (edge.i >= edge.j || edge.i < 0 || edge.j >= n) {
      throw InvalidInput("edge endpoints must satisfy 0 <= i < j < node_count");
    }
    if (edge_lookup_[edge.i * n + edge.j] != -1) {
      throw InvalidInput("duplicate edge");
    }
    edge_lookup_[edge.i * n + edge.j] = e;
    edge_lookup_[edge.j * n + edge.i] = e;
    adjacency_[edge.i].push_back(edge.j);
    adjacency_[edge.j].push_back(edge.i);
  }
  for (auto& list : adjacency_) std::sort(list.begin(), list.end());
}

int NetworkTopology::edge_index(int a, int b) const {
  const int n = node_count();
  if (a < 0 || b < 0 || a >= n || b >= n) return -1;
  return edge_lookup_[static_cast<std::size_t>(a) * n + b];
}

NetworkTopology build_topology(const Scenario& scenario) {
  scenario.validate();
  const int n = scenario.site_count() + 1;
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = euclidean_distance(scenario.node_position(i),
                                          scenario.node_position(j));
      if (pathloss_db(d, scenario.radio) > scenario.radio.pathloss_threshold_db) {
        continue;
      }
      edges.push_back({i, j, d, backhaul_unit_rate(d, scenario.radio)});
    }
  }
  return NetworkTopology(scenario.site_count(), std::move(edges));
}

void rebuild_route_indices(RouteSet& set, const NetworkTopology& topology) {
  set.by_edge.assign(topology.edge_count(), {});
  set.by_source.assign(topology.site_count(), {});
  for (int r = 0; r < set.size(); ++r) {
    set.by_source[set.source(r)].push_back(r);
    for (int e : set.route_edges[r]) set.by_edge[e].push_back(r);
  }
}

RouteSet enumerate_routes(const NetworkTopology& topology, int max_hops,
                          std::size_t route_ceiling) {
  if (max_hops < 1) throw InvalidConfig("max_hops must be >= 1");
  RouteSet out;
  const int target = topology.macro_bs();
  std::vector<int> path;
  std::vector<int> path_edges;
  std::vector<bool> on_path(topology.node_count(), false);

  // Neighbors are visited in ascending id order and the macro BS has the
  // largest id, so emission order is lexicographic.
  auto dfs = [&](auto&& self, int node) -> void {
    if (node == target) {
      if (out.routes.size() >= route_ceiling) {
        throw InvalidConfig("route enumeration exceeded ceiling of " +
                            std::to_string(route_ceiling) +
                            " routes; reduce max_hops or the site count");
      }
      out.ids.push_back(static_cast<int>(out.routes.size()));
      out.routes.push_back(path);
      out.route_edges.push_back(path_edges);
      return;
    }
    if (static_cast<int>(path_edges.size()) >= max_hops) return;
    for (int next : topology.neighbors(node)) {
      if (on_path[next]) continue;
      on_path[next] = true;
      path.push_back(next);
      path_edges.push_back(topology.edge_index(node, next));
      self(self, next);
      path_edges.pop_back();
      path.pop_back();
      on_path[next] = false;
    }
  };

  for (int s = 0; s < topology.site_count(); ++s) {
    path.assign(1, s);
    on_path[s] = true;
    dfs(dfs, s);
    on_path[s] = false;
  }
  rebuild_route_indices(out, topology);
  return out;
}

RouteSet filter_routes(const RouteSet& routes, const NetworkTopology& topology,
                       const std::vector<bool>& deployed) {
  if (static_cast<int>(deployed.size()) != topology.site_count()) {
    throw InvalidInput("deployment mask size does not match site count");
  }
  RouteSet out;
  for (int r = 0; r < routes.size(); ++r) {
    const auto& nodes = routes.routes[r];
    const bool relays_ok = std::all_of(nodes.begin() + 1, nodes.end() - 1,
                                       [&](int v) { return deployed[v]; });
    if (!relays_ok) continue;
    out.routes.push_back(nodes);
    out.route_edges.push_back(routes.route_edges[r]);
    out.ids.push_back(routes.ids[r]);
  }
  rebuild_route_indices(out, topology);
  return out;
}

std::string dump_routes(const RouteSet& routes, const NetworkTopology& topology) {
  std::ostringstream os;
  for (const auto& nodes : routes.routes) {
    os << nodes.front() << ": ";
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      if (k) os << '>';
      if (topology.is_macro_bs(nodes[k])) {
        os << "MBS";
      } else {
        os << nodes[k];
      }
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace rabs
