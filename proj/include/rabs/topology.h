#ifndef RABS_TOPOLOGY_H_
#define RABS_TOPOLOGY_H_

#include <cstddef>
#include <string>
#include <vector>

#include "rabs/scenario.h"

namespace rabs {

struct Edge {
  int i = 0;  // i < j
  int j = 0;
  double distance_m = 0.0;
  double unit_backhaul_rate_bps = 0.0;
};

// Undirected backhaul graph over candidate sites plus the macro BS. Node ids
// 0..site_count-1 are sites, node site_count is the macro BS.
class NetworkTopology {
 public:
  NetworkTopology() = default;
  NetworkTopology(int site_count, std::vector<Edge> edges);

  int site_count() const { return site_count_; }
  int node_count() const { return site_count_ + 1; }
  int macro_bs() const { return site_count_; }
  bool is_macro_bs(int node) const { return node == site_count_; }

  const std::vector<Edge>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  // Sorted neighbor ids of a node.
  const std::vector<int>& neighbors(int node) const { return adjacency_[node]; }
  // Edge index for the unordered pair, or -1 when absent.
  int edge_index(int a, int b) const;

 private:
  int site_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adjacency_;
  std::vector<int> edge_lookup_;  // dense node_count x node_count
};

// Adds an edge for every node pair whose mixture path loss is within the
// radio's pruning threshold.
NetworkTopology build_topology(const Scenario& scenario);

// Hop-bounded simple routes from candidate sites to the macro BS.
// `ids[k]` is the index of routes[k] in the set it was filtered from
// (identity for a freshly enumerated set), so flows recorded against a
// filtered set can be mapped back.
struct RouteSet {
  std::vector<std::vector<int>> routes;        // node sequences, source first
  std::vector<std::vector<int>> route_edges;   // edge indices along each route
  std::vector<int> ids;
  std::vector<std::vector<int>> by_edge;       // edge -> route positions
  std::vector<std::vector<int>> by_source;     // site -> route positions

  int size() const { return static_cast<int>(routes.size()); }
  int source(int r) const { return routes[r].front(); }
  int hops(int r) const { return static_cast<int>(routes[r].size()) - 1; }
};

inline constexpr std::size_t kDefaultRouteCeiling = 5'000'000;

// Every simple path with 1..max_hops edges from each site to the macro BS, in
// lexicographic order of node sequences. The count grows as O(V^H); exceeding
// `route_ceiling` throws InvalidConfig.
RouteSet enumerate_routes(const NetworkTopology& topology, int max_hops,
                          std::size_t route_ceiling = kDefaultRouteCeiling);

// Keeps the routes whose relay (intermediate) nodes are all in `deployed`.
// The source need not be deployed. `deployed` is indexed by site id.
RouteSet filter_routes(const RouteSet& routes, const NetworkTopology& topology,
                       const std::vector<bool>& deployed);

// Rebuilds by_edge / by_source from routes and route_edges.
void rebuild_route_indices(RouteSet& set, const NetworkTopology& topology);

// "source: n0>n1>...>MBS" per line.
std::string dump_routes(const RouteSet& routes, const NetworkTopology& topology);

}  // namespace rabs

#endif  // RABS_TOPOLOGY_H_
