#include "vne/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace vne {

std::vector<double> grc_rank(const ResourceGraphView& graph, const GrcParams& params) {
  const int n = static_cast<int>(graph.node_resources.size());
  if (n == 0) throw std::invalid_argument("grc_rank: empty graph");
  if (params.tol <= 0.0) throw std::invalid_argument("grc_rank: tol must be positive");

  std::vector<double> c(graph.node_resources);
  double total = std::accumulate(c.begin(), c.end(), 0.0);
  if (total > 0.0)
    for (auto& x : c) x /= total;
  else
    std::fill(c.begin(), c.end(), 1.0 / n);

  // Column-normalized transition weights: M[i][j] = b_ij / sum_k b_kj.
  std::vector<double> col_sum(n, 0.0);
  for (const auto& l : graph.links) {
    col_sum[static_cast<int>(l[0])] += l[2];
    col_sum[static_cast<int>(l[1])] += l[2];
  }

  std::vector<double> r = c, next(n);
  for (int iter = 0; iter < params.max_iters; ++iter) {
    for (int i = 0; i < n; ++i) next[i] = (1.0 - params.damping) * c[i];
    for (const auto& l : graph.links) {
      const int u = static_cast<int>(l[0]);
      const int v = static_cast<int>(l[1]);
      if (col_sum[v] > 0.0) next[u] += params.damping * (l[2] / col_sum[v]) * r[v];
      if (col_sum[u] > 0.0) next[v] += params.damping * (l[2] / col_sum[u]) * r[u];
    }
    double delta = 0.0;
    for (int i = 0; i < n; ++i) delta += std::abs(next[i] - r[i]);
    r.swap(next);
    if (delta < params.tol) return r;
  }
  throw std::runtime_error("grc_rank: no convergence within max_iters");
}

std::vector<double> grc_rank(const PhysicalNetwork& net, const GrcParams& params) {
  ResourceGraphView view;
  view.node_resources.resize(net.node_count());
  for (int i = 0; i < net.node_count(); ++i) view.node_resources[i] = net.node_available(i);
  for (int l = 0; l < net.link_count(); ++l) {
    auto [u, v] = net.link_endpoints(l);
    view.links.push_back({static_cast<double>(u), static_cast<double>(v), net.link_available(l)});
  }
  return grc_rank(view, params);
}

std::vector<double> grc_rank(const VirtualNetwork& vnr, const GrcParams& params) {
  ResourceGraphView view;
  view.node_resources = vnr.node_demands;
  for (const auto& l : vnr.links)
    view.links.push_back({static_cast<double>(l.i), static_cast<double>(l.j), l.demand});
  return grc_rank(view, params);
}

double nrm_score(const PhysicalNetwork& net, int node) {
  double bw = 0.0;
  for (int lid : net.incident_links(node)) bw += net.link_available(lid);
  return net.node_available(node) * bw;
}

namespace {

// Indices sorted by descending score, ascending index on ties.
std::vector<int> order_by_score_desc(const std::vector<double>& score) {
  std::vector<int> idx(score.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return score[a] > score[b]; });
  return idx;
}

EmbeddingSolution grc_allocate(PhysicalNetwork& net, const VirtualNetwork& vnr,
                               const GrcParams& params) {
  const auto phys_rank = grc_rank(net, params);
  const auto virt_rank = grc_rank(vnr, params);
  const auto virt_order = order_by_score_desc(virt_rank);
  const auto phys_order = order_by_score_desc(phys_rank);
  return embed_sequential(net, vnr, virt_order,
                          [&](const VirtualNetwork& v, int v_node, const PhysicalNetwork& n,
                              const std::vector<char>& used) {
                            for (int cand : phys_order)
                              if (check_node_feasible(n, v.node_demands[v_node], cand, used))
                                return cand;
                            return -1;
                          });
}

}  // namespace

GrcSolver::GrcSolver(GrcParams params, std::optional<double> admission_threshold)
    : params_(params), admission_threshold_(admission_threshold) {}

std::string GrcSolver::name() const { return "grc"; }

bool GrcSolver::admit(PhysicalNetwork& net, const VirtualNetwork& vnr) {
  if (!admission_threshold_) return true;
  // Trial embedding on a snapshot; the committed run happens in allocate.
  PhysicalNetwork scratch = net;
  EmbeddingSolution trial = grc_allocate(scratch, vnr, params_);
  if (trial.status != SolutionStatus::Embedded) return false;
  return revenue_to_cost(trial.revenue, trial.cost) >= *admission_threshold_;
}

EmbeddingSolution GrcSolver::allocate(PhysicalNetwork& net, const VirtualNetwork& vnr) {
  return grc_allocate(net, vnr, params_);
}

std::string NrmSolver::name() const { return "nrm"; }

bool NrmSolver::admit(PhysicalNetwork&, const VirtualNetwork&) { return true; }

EmbeddingSolution NrmSolver::allocate(PhysicalNetwork& net, const VirtualNetwork& vnr) {
  const auto order = order_by_score_desc(vnr.node_demands);
  return embed_sequential(net, vnr, order,
                          [](const VirtualNetwork& v, int v_node, const PhysicalNetwork& n,
                             const std::vector<char>& used) {
                            int best = -1;
                            double best_score = -1.0;
                            for (int cand = 0; cand < n.node_count(); ++cand) {
                              if (!check_node_feasible(n, v.node_demands[v_node], cand, used))
                                continue;
                              const double s = nrm_score(n, cand);
                              if (s > best_score) {
                                best_score = s;
                                best = cand;
                              }
                            }
                            return best;
                          });
}

RandomSolver::RandomSolver(std::uint64_t seed) : seed_(seed), rng_(seed) {}

std::string RandomSolver::name() const { return "random"; }

void RandomSolver::begin(const PhysicalNetwork&) { rng_ = Rng(seed_); }

bool RandomSolver::admit(PhysicalNetwork&, const VirtualNetwork&) { return true; }

EmbeddingSolution RandomSolver::allocate(PhysicalNetwork& net, const VirtualNetwork& vnr) {
  return embed_sequential(net, vnr, vnr.node_order,
                          [this](const VirtualNetwork& v, int v_node, const PhysicalNetwork& n,
                                 const std::vector<char>& used) {
                            std::vector<int> feasible;
                            for (int cand = 0; cand < n.node_count(); ++cand)
                              if (check_node_feasible(n, v.node_demands[v_node], cand, used))
                                feasible.push_back(cand);
                            if (feasible.empty()) return -1;
                            return feasible[static_cast<size_t>(
                                rng_.uniform_int(0, static_cast<int>(feasible.size()) - 1))];
                          });
}

}  // namespace vne
