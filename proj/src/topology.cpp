#include "vne/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace vne {

using nlohmann::json;

struct PhysicalNetwork::Topology {
  std::vector<double> node_caps;
  std::vector<PhysicalLink> links;  // u < v, availability unused here
  std::vector<std::vector<int>> incident;
  std::map<std::pair<int, int>, int> link_index;
  std::uint64_t rng_seed = 0;
  double max_capacity = 0.0;
};

PhysicalNetwork::PhysicalNetwork(std::vector<double> node_capacities,
                                 std::vector<std::array<double, 3>> links,
                                 std::uint64_t rng_seed) {
  auto topo = std::make_shared<Topology>();
  const int n = static_cast<int>(node_capacities.size());
  for (int i = 0; i < n; ++i) {
    if (node_capacities[i] <= 0.0)
      throw std::invalid_argument("node capacity must be positive");
  }
  topo->node_caps = std::move(node_capacities);
  topo->incident.resize(n);
  for (const auto& l : links) {
    int u = static_cast<int>(l[0]);
    int v = static_cast<int>(l[1]);
    double cap = l[2];
    if (u == v) throw std::invalid_argument("self-loop link");
    if (u < 0 || u >= n || v < 0 || v >= n) throw std::invalid_argument("link endpoint out of range");
    if (cap < 0.0) throw std::invalid_argument("negative link capacity");
    if (u > v) std::swap(u, v);
    if (topo->link_index.count({u, v})) throw std::invalid_argument("duplicate link");
    const int id = static_cast<int>(topo->links.size());
    topo->links.push_back({u, v, cap, cap});
    topo->link_index[{u, v}] = id;
    topo->incident[u].push_back(id);
    topo->incident[v].push_back(id);
  }
  topo->rng_seed = rng_seed;
  for (double c : topo->node_caps) topo->max_capacity = std::max(topo->max_capacity, c);
  for (const auto& l : topo->links) topo->max_capacity = std::max(topo->max_capacity, l.capacity);

  node_avail_ = topo->node_caps;
  link_avail_.reserve(topo->links.size());
  for (const auto& l : topo->links) link_avail_.push_back(l.capacity);
  topo_ = std::move(topo);
}

int PhysicalNetwork::node_count() const { return static_cast<int>(topo_->node_caps.size()); }
int PhysicalNetwork::link_count() const { return static_cast<int>(topo_->links.size()); }
double PhysicalNetwork::node_capacity(int node) const { return topo_->node_caps.at(node); }
double PhysicalNetwork::node_available(int node) const { return node_avail_.at(node); }
double PhysicalNetwork::link_capacity(int link) const { return topo_->links.at(link).capacity; }
double PhysicalNetwork::link_available(int link) const { return link_avail_.at(link); }

std::pair<int, int> PhysicalNetwork::link_endpoints(int link) const {
  const auto& l = topo_->links.at(link);
  return {l.u, l.v};
}

int PhysicalNetwork::find_link(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = topo_->link_index.find({u, v});
  return it == topo_->link_index.end() ? -1 : it->second;
}

std::span<const int> PhysicalNetwork::incident_links(int node) const {
  return topo_->incident.at(node);
}

int PhysicalNetwork::link_other_end(int link, int node) const {
  const auto& l = topo_->links.at(link);
  return l.u == node ? l.v : l.u;
}

std::uint64_t PhysicalNetwork::rng_seed() const { return topo_->rng_seed; }
double PhysicalNetwork::max_capacity() const { return topo_->max_capacity; }

bool PhysicalNetwork::connected() const {
  const int n = node_count();
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  int reached = 1;
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    for (int lid : topo_->incident[cur]) {
      int other = link_other_end(lid, cur);
      if (!seen[other]) {
        seen[other] = 1;
        ++reached;
        queue.push_back(other);
      }
    }
  }
  return reached == n;
}

void PhysicalNetwork::set_node_available(int node, double value) { node_avail_.at(node) = value; }
void PhysicalNetwork::set_link_available(int link, double value) { link_avail_.at(link) = value; }

void PhysicalNetwork::check_invariants() const {
  for (int i = 0; i < node_count(); ++i) {
    if (node_avail_[i] < 0.0 || node_avail_[i] > topo_->node_caps[i])
      throw std::logic_error("node availability out of range");
  }
  for (int i = 0; i < link_count(); ++i) {
    if (link_avail_[i] < 0.0 || link_avail_[i] > topo_->links[i].capacity)
      throw std::logic_error("link availability out of range");
  }
}

PhysicalNode PhysicalNetwork::node(int id) const {
  return {id, topo_->node_caps.at(id), node_avail_.at(id)};
}

PhysicalLink PhysicalNetwork::link(int id) const {
  const auto& l = topo_->links.at(id);
  return {l.u, l.v, l.capacity, link_avail_.at(id)};
}

bool PhysicalNetwork::same_topology(const PhysicalNetwork& other) const {
  return topo_ == other.topo_;
}

std::vector<std::vector<int>> VirtualNetwork::adjacency() const {
  std::vector<std::vector<int>> adj(node_demands.size());
  for (const auto& l : links) {
    adj[l.i].push_back(l.j);
    adj[l.j].push_back(l.i);
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());
  return adj;
}

void VirtualNetwork::validate() const {
  const int n = node_count();
  if (lifetime <= 0.0) throw std::invalid_argument("vnr lifetime must be positive");
  for (double d : node_demands)
    if (d < 0.0) throw std::invalid_argument("negative node demand");
  for (const auto& l : links) {
    if (l.i == l.j || l.i < 0 || l.j < 0 || l.i >= n || l.j >= n)
      throw std::invalid_argument("bad virtual link endpoints");
    if (l.demand < 0.0) throw std::invalid_argument("negative link demand");
  }
  if (static_cast<int>(node_order.size()) != n)
    throw std::invalid_argument("node_order size mismatch");
  std::vector<char> seen(n, 0);
  for (int idx : node_order) {
    if (idx < 0 || idx >= n || seen[idx]) throw std::invalid_argument("node_order not a permutation");
    seen[idx] = 1;
  }
}

double waxman_edge_probability(double dist, double max_dist, double alpha, double beta) {
  if (max_dist <= 0.0) return beta;
  return beta * std::exp(-dist / (alpha * max_dist));
}

namespace {

std::vector<int> component_labels(int n, const std::vector<std::pair<int, int>>& edges,
                                  int* n_components) {
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> label(n, -1);
  int comp = 0;
  for (int start = 0; start < n; ++start) {
    if (label[start] != -1) continue;
    std::deque<int> queue{start};
    label[start] = comp;
    while (!queue.empty()) {
      int cur = queue.front();
      queue.pop_front();
      for (int nb : adj[cur]) {
        if (label[nb] == -1) {
          label[nb] = comp;
          queue.push_back(nb);
        }
      }
    }
    ++comp;
  }
  *n_components = comp;
  return label;
}

double median(std::vector<double> values, double fallback) {
  if (values.empty()) return fallback;
  std::sort(values.begin(), values.end());
  const size_t m = values.size() / 2;
  if (values.size() % 2 == 1) return values[m];
  return 0.5 * (values[m - 1] + values[m]);
}

// BFS order from node 0 with ascending-index tie breaks.
std::vector<int> bfs_order(int n, const std::vector<std::vector<int>>& adj) {
  std::vector<int> order;
  std::vector<char> seen(n, 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  while (!queue.empty()) {
    int cur = queue.front();
    queue.pop_front();
    order.push_back(cur);
    for (int nb : adj[cur]) {
      if (!seen[nb]) {
        seen[nb] = 1;
        queue.push_back(nb);
      }
    }
  }
  // Disconnected requests are repaired before ordering, so this only covers
  // pathological inputs.
  for (int i = 0; i < n; ++i)
    if (!seen[i]) order.push_back(i);
  return order;
}

}  // namespace

PhysicalNetwork generate_waxman(const WaxmanParams& params, std::uint64_t seed) {
  if (params.n_nodes < 2) throw std::invalid_argument("waxman: need at least 2 nodes");
  if (params.alpha <= 0.0 || params.alpha > 1.0 || params.beta <= 0.0 || params.beta > 1.0)
    throw std::invalid_argument("waxman: alpha and beta must lie in (0, 1]");
  if (params.resource_low > params.resource_high || params.resource_low < 0.0)
    throw std::invalid_argument("waxman: bad resource range");

  Rng rng(seed);
  const int n = params.n_nodes;
  constexpr int kMaxAttempts = 100;

  std::vector<std::pair<int, int>> edges;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<double> xs(n), ys(n);
    for (int i = 0; i < n; ++i) {
      xs[i] = rng.uniform();
      ys[i] = rng.uniform();
    }
    double max_dist = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        max_dist = std::max(max_dist, std::hypot(xs[i] - xs[j], ys[i] - ys[j]));

    edges.clear();
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double d = std::hypot(xs[i] - xs[j], ys[i] - ys[j]);
        if (rng.uniform() < waxman_edge_probability(d, max_dist, params.alpha, params.beta))
          edges.emplace_back(i, j);
      }
    }
    int comps = 0;
    component_labels(n, edges, &comps);
    if (comps == 1) break;
    if (attempt == kMaxAttempts - 1) {
      // Chain the remaining components with bridging edges at median capacity.
      // The capacity is patched below once organic capacities are drawn.
      break;
    }
  }

  std::vector<std::array<double, 3>> links;
  links.reserve(edges.size());
  std::vector<double> organic_caps;
  for (auto [u, v] : edges) {
    const double cap = rng.uniform(params.resource_low, params.resource_high);
    links.push_back({static_cast<double>(u), static_cast<double>(v), cap});
    organic_caps.push_back(cap);
  }

  int comps = 0;
  auto labels = component_labels(n, edges, &comps);
  if (comps > 1) {
    const double bridge_cap =
        median(organic_caps, 0.5 * (params.resource_low + params.resource_high));
    std::vector<std::vector<int>> members(comps);
    for (int i = 0; i < n; ++i) members[labels[i]].push_back(i);
    for (int c = 1; c < comps; ++c) {
      const auto& a = members[c - 1];
      const auto& b = members[c];
      const int u = a[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(a.size()) - 1))];
      const int v = b[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(b.size()) - 1))];
      links.push_back({static_cast<double>(u), static_cast<double>(v), bridge_cap});
    }
  }

  std::vector<double> node_caps(n);
  for (int i = 0; i < n; ++i) node_caps[i] = rng.uniform(params.resource_low, params.resource_high);

  PhysicalNetwork net(std::move(node_caps), std::move(links), seed);
  if (!net.connected()) throw std::runtime_error("waxman: substrate still disconnected");
  return net;
}

std::vector<VirtualNetwork> generate_vnr_stream(const VnrStreamParams& params,
                                                std::uint64_t seed) {
  if (params.count < 1) throw std::invalid_argument("vnr stream: count must be >= 1");
  if (params.arrival_rate <= 0.0) throw std::invalid_argument("vnr stream: rate must be > 0");
  if (params.node_min < 1 || params.node_min > params.node_max)
    throw std::invalid_argument("vnr stream: bad node range");
  if (params.demand_low > params.demand_high || params.demand_low < 0.0)
    throw std::invalid_argument("vnr stream: bad demand range");

  Rng rng(seed);
  std::vector<VirtualNetwork> out;
  out.reserve(params.count);
  double t = 0.0;
  for (int k = 0; k < params.count; ++k) {
    VirtualNetwork vnr;
    vnr.id = k;
    t += rng.exponential(1.0 / params.arrival_rate);
    vnr.arrival_time = t;
    vnr.lifetime = rng.exponential(params.mean_lifetime);

    const int n = rng.uniform_int(params.node_min, params.node_max);
    vnr.node_demands.resize(n);
    for (auto& d : vnr.node_demands) d = rng.uniform(params.demand_low, params.demand_high);

    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.uniform() < params.edge_prob) pairs.emplace_back(i, j);
    for (auto [i, j] : pairs)
      vnr.links.push_back({i, j, rng.uniform(params.demand_low, params.demand_high)});

    // Repair disconnected requests by chaining components with one extra
    // link at the median existing demand.
    int comps = 0;
    auto labels = component_labels(n, pairs, &comps);
    if (comps > 1) {
      std::vector<double> demands;
      for (const auto& l : vnr.links) demands.push_back(l.demand);
      const double bridge =
          median(demands, 0.5 * (params.demand_low + params.demand_high));
      std::vector<std::vector<int>> members(comps);
      for (int i = 0; i < n; ++i) members[labels[i]].push_back(i);
      for (int c = 1; c < comps; ++c) {
        const auto& a = members[c - 1];
        const auto& b = members[c];
        const int u = a[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(a.size()) - 1))];
        const int v = b[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(b.size()) - 1))];
        vnr.links.push_back({std::min(u, v), std::max(u, v), bridge});
      }
    }

    vnr.node_order = bfs_order(n, vnr.adjacency());
    vnr.validate();
    out.push_back(std::move(vnr));
  }
  return out;
}

namespace {

PhysicalNetwork build_from_parts(std::vector<std::pair<int, double>> nodes,
                                 std::vector<std::array<double, 3>> links,
                                 std::optional<std::pair<double, double>> fill_range,
                                 std::uint64_t seed) {
  if (nodes.empty()) throw std::runtime_error("topology file declares no nodes");
  std::sort(nodes.begin(), nodes.end());
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].first != static_cast<int>(i))
      throw std::runtime_error("topology node ids must be 0..n-1");
  }
  Rng rng(seed);
  std::vector<double> caps(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i) {
    double c = nodes[i].second;
    if (c <= 0.0) {
      if (!fill_range) throw std::runtime_error("missing node capacity and no fill range");
      c = rng.uniform(fill_range->first, fill_range->second);
    }
    caps[i] = c;
  }
  for (auto& l : links) {
    if (l[2] <= 0.0) {
      if (!fill_range) throw std::runtime_error("missing link capacity and no fill range");
      l[2] = rng.uniform(fill_range->first, fill_range->second);
    }
  }
  return PhysicalNetwork(std::move(caps), std::move(links), seed);
}

}  // namespace

PhysicalNetwork load_topology(const std::string& path, TopologyFormat format,
                              std::optional<std::pair<double, double>> fill_range,
                              std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open topology file: " + path);

  if (format == TopologyFormat::Json) {
    json doc = json::parse(in);
    std::vector<std::pair<int, double>> nodes;
    std::vector<std::array<double, 3>> links;
    for (const auto& nd : doc.at("nodes"))
      nodes.emplace_back(nd.at("id").get<int>(), nd.value("capacity", 0.0));
    for (const auto& l : doc.at("links"))
      links.push_back({l.at("u").get<double>(), l.at("v").get<double>(), l.value("capacity", 0.0)});
    return build_from_parts(std::move(nodes), std::move(links), fill_range, seed);
  }

  // Edge list: "node <id> [capacity]" header lines, then "u v [capacity]".
  std::vector<std::pair<int, double>> nodes;
  std::vector<std::array<double, 3>> links;
  std::string line;
  bool any = false;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    any = true;
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (tok == "node") {
      int id;
      double cap = 0.0;
      if (!(ls >> id)) throw std::runtime_error("bad node line: " + line);
      ls >> cap;
      nodes.emplace_back(id, cap);
    } else {
      int u, v;
      double cap = 0.0;
      std::istringstream es(line);
      if (!(es >> u >> v)) throw std::runtime_error("bad edge line: " + line);
      es >> cap;
      links.push_back({static_cast<double>(u), static_cast<double>(v), cap});
    }
  }
  if (!any) throw std::runtime_error("empty topology file: " + path);
  if (nodes.empty()) {
    // Files without node headers imply ids from the edges, capacity filled.
    int max_id = -1;
    for (const auto& l : links) max_id = std::max({max_id, static_cast<int>(l[0]), static_cast<int>(l[1])});
    for (int i = 0; i <= max_id; ++i) nodes.emplace_back(i, 0.0);
  }
  return build_from_parts(std::move(nodes), std::move(links), fill_range, seed);
}

void save_topology(const PhysicalNetwork& net, const std::string& path, TopologyFormat format) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write topology file: " + path);
  if (format == TopologyFormat::Json) {
    json doc;
    doc["nodes"] = json::array();
    doc["links"] = json::array();
    for (int i = 0; i < net.node_count(); ++i)
      doc["nodes"].push_back({{"id", i}, {"capacity", net.node_capacity(i)}});
    for (int l = 0; l < net.link_count(); ++l) {
      auto [u, v] = net.link_endpoints(l);
      doc["links"].push_back({{"u", u}, {"v", v}, {"capacity", net.link_capacity(l)}});
    }
    out << doc.dump(2) << "\n";
    return;
  }
  out.precision(17);
  for (int i = 0; i < net.node_count(); ++i)
    out << "node " << i << " " << net.node_capacity(i) << "\n";
  for (int l = 0; l < net.link_count(); ++l) {
    auto [u, v] = net.link_endpoints(l);
    out << u << " " << v << " " << net.link_capacity(l) << "\n";
  }
}

std::string vnr_to_json(const VirtualNetwork& vnr) {
  json doc;
  doc["id"] = vnr.id;
  doc["arrival_time"] = vnr.arrival_time;
  doc["lifetime"] = vnr.lifetime;
  doc["node_demands"] = vnr.node_demands;
  doc["links"] = json::array();
  for (const auto& l : vnr.links) doc["links"].push_back({{"i", l.i}, {"j", l.j}, {"demand", l.demand}});
  doc["node_order"] = vnr.node_order;
  return doc.dump();
}

VirtualNetwork vnr_from_json(const std::string& text) {
  json doc = json::parse(text);
  VirtualNetwork vnr;
  vnr.id = doc.at("id").get<int>();
  vnr.arrival_time = doc.at("arrival_time").get<double>();
  vnr.lifetime = doc.at("lifetime").get<double>();
  vnr.node_demands = doc.at("node_demands").get<std::vector<double>>();
  for (const auto& l : doc.at("links"))
    vnr.links.push_back({l.at("i").get<int>(), l.at("j").get<int>(), l.at("demand").get<double>()});
  vnr.node_order = doc.at("node_order").get<std::vector<int>>();
  vnr.validate();
  return vnr;
}

}  // namespace vne
