#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vne/rng.hpp"

namespace vne {

struct PhysicalNode {
  int id = 0;
  double capacity = 0.0;
  double available = 0.0;
};

struct PhysicalLink {
  int u = 0;
  int v = 0;
  double capacity = 0.0;
  double available = 0.0;
};

// Substrate graph. The topology (nodes, links, capacities) is immutable and
// shared between copies; only the availability vectors are per-instance, so
// copying a network is a cheap state snapshot.
class PhysicalNetwork {
 public:
  PhysicalNetwork() = default;
  // links as (u, v, capacity); the graph must be simple and undirected.
  PhysicalNetwork(std::vector<double> node_capacities,
                  std::vector<std::array<double, 3>> links, std::uint64_t rng_seed);

  int node_count() const;
  int link_count() const;
  double node_capacity(int node) const;
  double node_available(int node) const;
  double link_capacity(int link) const;
  double link_available(int link) const;
  std::pair<int, int> link_endpoints(int link) const;
  // Link id joining u and v, or -1.
  int find_link(int u, int v) const;
  // Ids of links incident to a node.
  std::span<const int> incident_links(int node) const;
  // Neighbor node on the other side of an incident link.
  int link_other_end(int link, int node) const;

  std::uint64_t rng_seed() const;
  // Largest capacity over all nodes and links; used to normalize features.
  double max_capacity() const;
  bool connected() const;

  void set_node_available(int node, double value);
  void set_link_available(int link, double value);

  // Throws std::logic_error when any availability leaves [0, capacity].
  void check_invariants() const;

  PhysicalNode node(int id) const;
  PhysicalLink link(int id) const;

  bool same_topology(const PhysicalNetwork& other) const;

 private:
  struct Topology;
  std::shared_ptr<const Topology> topo_;
  std::vector<double> node_avail_;
  std::vector<double> link_avail_;
};

struct VirtualLink {
  int i = 0;
  int j = 0;
  double demand = 0.0;
};

struct VirtualNetwork {
  int id = 0;
  std::vector<double> node_demands;
  std::vector<VirtualLink> links;
  double arrival_time = 0.0;
  double lifetime = 0.0;
  // Placement order of virtual nodes; a permutation of 0..n-1.
  std::vector<int> node_order;

  int node_count() const { return static_cast<int>(node_demands.size()); }
  int link_count() const { return static_cast<int>(links.size()); }
  std::vector<std::vector<int>> adjacency() const;
  // Throws std::invalid_argument on malformed requests.
  void validate() const;
};

struct WaxmanParams {
  int n_nodes = 100;
  double alpha = 0.5;
  double beta = 0.2;
  double resource_low = 50.0;
  double resource_high = 100.0;
};

struct VnrStreamParams {
  int count = 1000;
  double arrival_rate = 0.04;
  double mean_lifetime = 1000.0;
  int node_min = 2;
  int node_max = 10;
  double edge_prob = 0.5;
  double demand_low = 0.0;
  double demand_high = 50.0;
};

// Edge probability for node distance `dist` given the maximum pairwise
// distance `max_dist`: beta * exp(-dist / (alpha * max_dist)).
double waxman_edge_probability(double dist, double max_dist, double alpha, double beta);

// Generates a connected Waxman substrate; capacities uniform in
// [resource_low, resource_high], availability equal to capacity.
PhysicalNetwork generate_waxman(const WaxmanParams& params, std::uint64_t seed);

// Poisson arrivals, exponential lifetimes, uniform node counts and demands.
// Every request is repaired to be connected and carries a BFS node order.
std::vector<VirtualNetwork> generate_vnr_stream(const VnrStreamParams& params,
                                                std::uint64_t seed);

enum class TopologyFormat { EdgeList, Json };

// When a file omits capacities they are filled uniformly from `fill_range`.
PhysicalNetwork load_topology(const std::string& path, TopologyFormat format,
                              std::optional<std::pair<double, double>> fill_range = std::nullopt,
                              std::uint64_t seed = 0);
void save_topology(const PhysicalNetwork& net, const std::string& path, TopologyFormat format);

std::string vnr_to_json(const VirtualNetwork& vnr);
VirtualNetwork vnr_from_json(const std::string& text);

}  // namespace vne
