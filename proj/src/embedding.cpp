#include "vne/embedding.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>

#include "json.hpp"

namespace vne {

EmbeddingSolution EmbeddingSolution::start(const VirtualNetwork& vnr) {
  EmbeddingSolution sol;
  sol.vnr_id = vnr.id;
  sol.node_map.assign(vnr.node_count(), -1);
  sol.link_paths.assign(vnr.link_count(), {});
  sol.status = SolutionStatus::InProgress;
  return sol;
}

bool EmbeddingSolution::uses_node(int p_node) const {
  return std::find(node_map.begin(), node_map.end(), p_node) != node_map.end();
}

std::string EmbeddingSolution::to_json(const VirtualNetwork& vnr,
                                       const PhysicalNetwork& net) const {
  nlohmann::json doc;
  doc["vnr_id"] = vnr_id;
  doc["status"] = status == SolutionStatus::Embedded ? "embedded"
                  : status == SolutionStatus::Failed ? "failed"
                                                     : "in-progress";
  doc["node_map"] = node_map;
  doc["link_paths"] = nlohmann::json::array();
  for (int li = 0; li < static_cast<int>(link_paths.size()); ++li) {
    // Emit the node sequence of each path for auditability.
    nlohmann::json path = nlohmann::json::array();
    if (!link_paths[li].empty()) {
      int cur = node_map[vnr.links[li].i];
      path.push_back(cur);
      for (int lid : link_paths[li]) {
        cur = net.link_other_end(lid, cur);
        path.push_back(cur);
      }
    }
    doc["link_paths"].push_back(path);
  }
  doc["revenue"] = revenue;
  doc["cost"] = cost;
  return doc.dump();
}

bool check_node_feasible(const PhysicalNetwork& net, double demand, int node,
                         const std::vector<char>& used) {
  if (node < 0 || node >= net.node_count()) throw std::out_of_range("physical node id");
  if (!used.empty() && used[node]) return false;
  return net.node_available(node) >= demand;
}

bool place_node(PhysicalNetwork& net, EmbeddingSolution& sol, const VirtualNetwork& vnr,
                int v_node, int p_node, AllocationLedger& ledger) {
  const double demand = vnr.node_demands.at(v_node);
  if (sol.node_map.at(v_node) != -1) throw std::logic_error("virtual node already placed");
  if (sol.uses_node(p_node)) return false;
  const double avail = net.node_available(p_node);
  if (avail < demand) return false;
  ledger.entries.push_back({AllocationLedger::Kind::Node, p_node, demand, avail});
  net.set_node_available(p_node, avail - demand);
  sol.node_map[v_node] = p_node;
  return true;
}

namespace {

// Minimum-hop path from src to dst using only links with available >= demand.
// Among equal-length paths returns the lexicographically smallest node
// sequence: distances are computed from dst, then the walk from src always
// picks the smallest-id neighbor that still decreases the distance.
std::vector<int> shortest_feasible_path(const PhysicalNetwork& net, int src, int dst,
                                        double demand) {
  const int n = net.node_count();
  std::vector<int> dist(n, std::numeric_limits<int>::max());
  std::deque<int> queue{dst};
  dist[dst] = 0;
  while (!queue.empty()) {
    const int cur = queue.front();
    queue.pop_front();
    for (int lid : net.incident_links(cur)) {
      if (net.link_available(lid) < demand) continue;
      const int nb = net.link_other_end(lid, cur);
      if (dist[nb] == std::numeric_limits<int>::max()) {
        dist[nb] = dist[cur] + 1;
        queue.push_back(nb);
      }
    }
  }
  if (dist[src] == std::numeric_limits<int>::max()) return {};

  std::vector<int> path;
  int cur = src;
  while (cur != dst) {
    int best_node = -1, best_link = -1;
    for (int lid : net.incident_links(cur)) {
      if (net.link_available(lid) < demand) continue;
      const int nb = net.link_other_end(lid, cur);
      if (dist[nb] != dist[cur] - 1) continue;
      if (best_node == -1 || nb < best_node) {
        best_node = nb;
        best_link = lid;
      }
    }
    path.push_back(best_link);
    cur = best_node;
  }
  return path;
}

}  // namespace

bool route_link(PhysicalNetwork& net, EmbeddingSolution& sol, const VirtualNetwork& vnr,
                int link_index, AllocationLedger& ledger) {
  const auto& vlink = vnr.links.at(link_index);
  const int src = sol.node_map.at(vlink.i);
  const int dst = sol.node_map.at(vlink.j);
  if (src < 0 || dst < 0) throw std::logic_error("route_link: endpoints not placed");
  if (src == dst) throw std::logic_error("route_link: endpoints collapsed onto one node");
  if (!sol.link_paths.at(link_index).empty()) throw std::logic_error("virtual link already routed");

  const auto path = shortest_feasible_path(net, src, dst, vlink.demand);
  if (path.empty()) return false;
  for (int lid : path) {
    const double avail = net.link_available(lid);
    ledger.entries.push_back({AllocationLedger::Kind::Link, lid, vlink.demand, avail});
    net.set_link_available(lid, avail - vlink.demand);
  }
  sol.link_paths[link_index] = path;
  return true;
}

void rollback(PhysicalNetwork& net, AllocationLedger& ledger) {
  for (auto it = ledger.entries.rbegin(); it != ledger.entries.rend(); ++it) {
    if (it->kind == AllocationLedger::Kind::Node)
      net.set_node_available(it->index, it->prior_available);
    else
      net.set_link_available(it->index, it->prior_available);
  }
  ledger.clear();
}

double revenue(const VirtualNetwork& vnr) {
  double total = 0.0;
  for (double d : vnr.node_demands) total += d;
  for (const auto& l : vnr.links) total += l.demand;
  return total;
}

double cost(const EmbeddingSolution& sol, const VirtualNetwork& vnr) {
  double total = 0.0;
  for (double d : vnr.node_demands) total += d;
  for (int li = 0; li < vnr.link_count(); ++li)
    total += static_cast<double>(sol.link_paths[li].size()) * vnr.links[li].demand;
  return total;
}

double revenue_to_cost(double rev, double cst) {
  if (cst == 0.0) return 1.0;
  return rev / cst;
}

void release(PhysicalNetwork& net, EmbeddingSolution& sol, const VirtualNetwork& vnr) {
  if (sol.status != SolutionStatus::Embedded)
    throw std::logic_error("release: solution is not embedded");
  if (sol.released) throw std::logic_error("release: already released");
  // Additive restoration can overshoot capacity by an ulp; clamp so the
  // 0 <= available <= capacity invariant stays hard.
  for (int v = 0; v < vnr.node_count(); ++v) {
    const int p = sol.node_map[v];
    net.set_node_available(
        p, std::min(net.node_capacity(p), net.node_available(p) + vnr.node_demands[v]));
  }
  for (int li = 0; li < vnr.link_count(); ++li)
    for (int lid : sol.link_paths[li])
      net.set_link_available(
          lid, std::min(net.link_capacity(lid), net.link_available(lid) + vnr.links[li].demand));
  sol.released = true;
}

void finalize_solution(EmbeddingSolution& sol, const VirtualNetwork& vnr) {
  for (int m : sol.node_map)
    if (m < 0) throw std::logic_error("finalize: unmapped virtual node");
  for (const auto& p : sol.link_paths)
    if (p.empty()) throw std::logic_error("finalize: unmapped virtual link");
  sol.status = SolutionStatus::Embedded;
  sol.revenue = revenue(vnr);
  sol.cost = cost(sol, vnr);
}

void check_solution_invariants(const EmbeddingSolution& sol, const VirtualNetwork& vnr,
                               const PhysicalNetwork& net) {
  // Injectivity over placed nodes.
  std::vector<char> seen(net.node_count(), 0);
  for (int m : sol.node_map) {
    if (m == -1) continue;
    if (m < 0 || m >= net.node_count()) throw std::logic_error("node map out of range");
    if (seen[m]) throw std::logic_error("node map not injective");
    seen[m] = 1;
  }
  if (sol.status == SolutionStatus::Embedded) {
    for (int m : sol.node_map)
      if (m == -1) throw std::logic_error("embedded solution with unmapped node");
    for (const auto& p : sol.link_paths)
      if (p.empty()) throw std::logic_error("embedded solution with unmapped link");
    if (sol.cost < sol.revenue - 1e-9) throw std::logic_error("cost below revenue");
    const double rc = revenue_to_cost(sol.revenue, sol.cost);
    if (!(rc > 0.0 || sol.revenue == 0.0) || rc > 1.0 + 1e-12)
      throw std::logic_error("revenue-to-cost outside (0, 1]");
  }
  // Paths are loop-free walks connecting the mapped endpoints.
  for (int li = 0; li < static_cast<int>(sol.link_paths.size()); ++li) {
    const auto& path = sol.link_paths[li];
    if (path.empty()) continue;
    const auto& vl = vnr.links[li];
    int cur = sol.node_map[vl.i];
    std::vector<char> visited(net.node_count(), 0);
    visited[cur] = 1;
    for (int lid : path) {
      const auto [u, v] = net.link_endpoints(lid);
      if (u != cur && v != cur) throw std::logic_error("path not contiguous");
      cur = net.link_other_end(lid, cur);
      if (visited[cur]) throw std::logic_error("path has a loop");
      visited[cur] = 1;
    }
    if (cur != sol.node_map[vl.j]) throw std::logic_error("path does not reach endpoint");
  }
}

}  // namespace vne
