#include "vne/simulation.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace vne {

std::string DecisionRecord::to_jsonl() const {
  nlohmann::json doc;
  doc["id"] = vnr_id;
  doc["admitted"] = admitted;
  doc["embedded"] = embedded;
  doc["revenue"] = revenue;
  doc["cost"] = cost;
  doc["elapsed"] = elapsed_sec;
  return doc.dump();
}

double acceptance_ratio(const MetricsAccumulator& m) {
  return m.total == 0 ? 0.0 : static_cast<double>(m.accepted) / static_cast<double>(m.total);
}

double long_term_avg_revenue(const MetricsAccumulator& m) {
  return m.total == 0 ? 0.0 : m.revenue_sum / static_cast<double>(m.total);
}

double mean_rc_ratio(const MetricsAccumulator& m) {
  if (m.rc_ratios.empty()) return 0.0;
  double s = 0.0;
  for (double r : m.rc_ratios) s += r;
  return s / static_cast<double>(m.rc_ratios.size());
}

std::string metrics_csv_header() { return "seed,ac_ratio,la_rev,mean_rc,wall_clock_sec"; }

std::string metrics_csv_row(std::uint64_t seed, const MetricsAccumulator& m) {
  std::ostringstream os;
  os.precision(10);
  os << seed << "," << acceptance_ratio(m) << "," << long_term_avg_revenue(m) << ","
     << mean_rc_ratio(m) << "," << m.wall_clock_sec;
  return os.str();
}

namespace {

struct ActiveEmbedding {
  EmbeddingSolution sol;
  const VirtualNetwork* vnr;
};

// capacity - available must equal the demands of everything currently
// mapped onto each resource, up to rounding from release additions.
void check_conservation(const PhysicalNetwork& net,
                        const std::map<int, ActiveEmbedding>& active) {
  std::vector<double> node_used(net.node_count(), 0.0);
  std::vector<double> link_used(net.link_count(), 0.0);
  for (const auto& [id, a] : active) {
    for (int v = 0; v < a.vnr->node_count(); ++v)
      node_used[a.sol.node_map[v]] += a.vnr->node_demands[v];
    for (int li = 0; li < a.vnr->link_count(); ++li)
      for (int lid : a.sol.link_paths[li]) link_used[lid] += a.vnr->links[li].demand;
  }
  const double tol = 1e-9 * std::max(1.0, net.max_capacity());
  for (int i = 0; i < net.node_count(); ++i) {
    if (std::abs((net.node_capacity(i) - net.node_available(i)) - node_used[i]) > tol)
      throw std::logic_error("node conservation violated");
  }
  for (int l = 0; l < net.link_count(); ++l) {
    if (std::abs((net.link_capacity(l) - net.link_available(l)) - link_used[l]) > tol)
      throw std::logic_error("link conservation violated");
  }
  net.check_invariants();
}

}  // namespace

MetricsAccumulator run_simulation(PhysicalNetwork net, const std::vector<VirtualNetwork>& vnrs,
                                  Solver& solver, const SimulationOptions& opts) {
  for (size_t k = 1; k < vnrs.size(); ++k)
    if (vnrs[k].arrival_time < vnrs[k - 1].arrival_time)
      throw std::invalid_argument("vnr stream not sorted by arrival");

  MetricsAccumulator metrics;
  metrics.pricing = opts.pricing;

  using Departure = std::pair<double, int>;  // (time, vnr id)
  std::priority_queue<Departure, std::vector<Departure>, std::greater<>> departures;
  std::map<int, ActiveEmbedding> active;

  solver.begin(net);

  size_t next_arrival = 0;
  auto process_departure = [&]() {
    const int id = departures.top().second;
    departures.pop();
    auto it = active.find(id);
    release(net, it->second.sol, *it->second.vnr);
    active.erase(it);
  };

  try {
    while (next_arrival < vnrs.size() || !departures.empty()) {
      const bool have_arrival = next_arrival < vnrs.size();
      // Departures run first on timestamp ties so resources free before the
      // next request is considered.
      if (!departures.empty() &&
          (!have_arrival || departures.top().first <= vnrs[next_arrival].arrival_time)) {
        process_departure();
        if (opts.validate) check_conservation(net, active);
        continue;
      }
      if (!have_arrival) break;

      const VirtualNetwork& vnr = vnrs[next_arrival++];
      ++metrics.total;
      DecisionRecord rec;
      rec.vnr_id = vnr.id;
      const auto t0 = std::chrono::steady_clock::now();
      rec.admitted = solver.admit(net, vnr);
      EmbeddingSolution sol;
      if (rec.admitted) sol = solver.allocate(net, vnr);
      rec.elapsed_sec =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      metrics.wall_clock_sec += rec.elapsed_sec;

      if (rec.admitted && sol.status == SolutionStatus::Embedded) {
        rec.embedded = true;
        rec.revenue = sol.revenue;
        rec.cost = sol.cost;
        ++metrics.accepted;
        metrics.revenue_sum +=
            (opts.pricing.w_a + opts.pricing.w_b * vnr.lifetime) * sol.revenue;
        metrics.rc_ratios.push_back(revenue_to_cost(sol.revenue, sol.cost));
        if (opts.validate) check_solution_invariants(sol, vnr, net);
        departures.emplace(vnr.arrival_time + vnr.lifetime, vnr.id);
        active.emplace(vnr.id, ActiveEmbedding{std::move(sol), &vnr});
      }
      if (opts.validate) check_conservation(net, active);
      if (opts.on_decision) opts.on_decision(rec);
    }
  } catch (const std::exception& e) {
    metrics.valid = false;
    metrics.error = e.what();
  }
  return metrics;
}

}  // namespace vne
