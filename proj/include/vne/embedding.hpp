#pragma once

#include <string>
#include <vector>

#include "vne/topology.hpp"

namespace vne {

enum class SolutionStatus { InProgress, Embedded, Failed };

// Node and link assignment of one request onto the substrate. Paths are
// stored as physical link id sequences; node_map entries are -1 until placed.
struct EmbeddingSolution {
  int vnr_id = -1;
  std::vector<int> node_map;
  std::vector<std::vector<int>> link_paths;  // indexed like VirtualNetwork::links
  SolutionStatus status = SolutionStatus::InProgress;
  double revenue = 0.0;
  double cost = 0.0;
  bool released = false;

  static EmbeddingSolution start(const VirtualNetwork& vnr);
  bool uses_node(int p_node) const;
  std::string to_json(const VirtualNetwork& vnr, const PhysicalNetwork& net) const;
};

// Every deduction made during an embedding attempt, in order. Rollback
// replays it in reverse and restores the recorded prior availability, which
// makes restoration exact regardless of floating-point rounding.
struct AllocationLedger {
  enum class Kind { Node, Link };
  struct Entry {
    Kind kind;
    int index;
    double amount;
    double prior_available;
  };
  std::vector<Entry> entries;

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
  void clear() { entries.clear(); }
};

// True iff the node has enough remaining capacity and is not already used.
bool check_node_feasible(const PhysicalNetwork& net, double demand, int node,
                         const std::vector<char>& used);

// Deducts the demand and extends the map; returns false (no mutation) when
// infeasible.
bool place_node(PhysicalNetwork& net, EmbeddingSolution& sol, const VirtualNetwork& vnr,
                int v_node, int p_node, AllocationLedger& ledger);

// Routes one virtual link over a minimum-hop path of the subgraph whose
// links have at least `demand` available. Both endpoints must be placed.
// Ties between equal-length paths break toward the lexicographically
// smallest node sequence. Returns false (no mutation) when no path exists.
bool route_link(PhysicalNetwork& net, EmbeddingSolution& sol, const VirtualNetwork& vnr,
                int link_index, AllocationLedger& ledger);

// Restores all availability touched by the ledger and empties it.
void rollback(PhysicalNetwork& net, AllocationLedger& ledger);

// Total requested resources: node demands plus link demands.
double revenue(const VirtualNetwork& vnr);

// Total consumed resources: node demands plus path length times link demand.
double cost(const EmbeddingSolution& sol, const VirtualNetwork& vnr);

double revenue_to_cost(double rev, double cst);

// Returns the resources of an embedded request. Double release or releasing
// a non-embedded solution throws std::logic_error.
void release(PhysicalNetwork& net, EmbeddingSolution& sol, const VirtualNetwork& vnr);

// Marks the solution embedded and fills revenue/cost; all nodes and links
// must be mapped.
void finalize_solution(EmbeddingSolution& sol, const VirtualNetwork& vnr);

// Scans one solution against the constraint set: injective node map, full
// mapping when embedded, loop-free connecting paths, cost >= revenue.
// Throws std::logic_error with a description on the first violation.
void check_solution_invariants(const EmbeddingSolution& sol, const VirtualNetwork& vnr,
                               const PhysicalNetwork& net);

// Sequential embedding used by every solver: place nodes in `order`, asking
// `choose(vnr, v_node, net, used) -> physical id or -1` for a host, and route
// each virtual link as soon as both of its endpoints are placed. Rolls back
// and returns a Failed solution on any failure; on success deductions stay
// committed.
template <typename Chooser>
EmbeddingSolution embed_sequential(PhysicalNetwork& net, const VirtualNetwork& vnr,
                                   const std::vector<int>& order, Chooser&& choose) {
  EmbeddingSolution sol = EmbeddingSolution::start(vnr);
  AllocationLedger ledger;
  std::vector<char> used(net.node_count(), 0);
  std::vector<char> placed(vnr.node_count(), 0);
  for (int v_node : order) {
    const int host = choose(vnr, v_node, net, used);
    if (host < 0 || !place_node(net, sol, vnr, v_node, host, ledger)) {
      rollback(net, ledger);
      sol.status = SolutionStatus::Failed;
      return sol;
    }
    used[host] = 1;
    placed[v_node] = 1;
    for (int li = 0; li < vnr.link_count(); ++li) {
      const auto& l = vnr.links[li];
      if (!sol.link_paths[li].empty()) continue;
      const bool ready = placed[l.i] && placed[l.j] && (l.i == v_node || l.j == v_node);
      if (!ready) continue;
      if (!route_link(net, sol, vnr, li, ledger)) {
        rollback(net, ledger);
        sol.status = SolutionStatus::Failed;
        return sol;
      }
    }
  }
  finalize_solution(sol, vnr);
  return sol;
}

}  // namespace vne
