#pragma once

#include <optional>
#include <vector>

#include "vne/rng.hpp"
#include "vne/simulation.hpp"

namespace vne {

struct GrcParams {
  double damping = 0.85;
  double tol = 1e-6;
  int max_iters = 1000;
};

// Generic resource graph for the global-resource-capacity random walk:
// node weights are compute resources, edge weights bandwidth.
struct ResourceGraphView {
  std::vector<double> node_resources;
  std::vector<std::array<double, 3>> links;  // (u, v, bandwidth)
};

// Fixed point of r = (1-d) c + d M r where c is the normalized node-resource
// vector and M the column-normalized bandwidth transition matrix. Iterates
// until the L1 change drops below tol; throws on non-convergence.
std::vector<double> grc_rank(const ResourceGraphView& graph, const GrcParams& params);

std::vector<double> grc_rank(const PhysicalNetwork& net, const GrcParams& params);
std::vector<double> grc_rank(const VirtualNetwork& vnr, const GrcParams& params);

// available(node) times the summed available bandwidth of incident links.
double nrm_score(const PhysicalNetwork& net, int node);

// Greedy rank matching with shortest-path link mapping. The optional
// admission threshold rejects requests whose trial embedding has a
// revenue-to-cost ratio below it.
class GrcSolver : public Solver {
 public:
  explicit GrcSolver(GrcParams params = {}, std::optional<double> admission_threshold = std::nullopt);
  std::string name() const override;
  bool admit(PhysicalNetwork& net, const VirtualNetwork& vnr) override;
  EmbeddingSolution allocate(PhysicalNetwork& net, const VirtualNetwork& vnr) override;

 private:
  GrcParams params_;
  std::optional<double> admission_threshold_;
};

// Largest node-resource-management score first, descending demand order.
class NrmSolver : public Solver {
 public:
  std::string name() const override;
  bool admit(PhysicalNetwork& net, const VirtualNetwork& vnr) override;
  EmbeddingSolution allocate(PhysicalNetwork& net, const VirtualNetwork& vnr) override;
};

// Uniform choice among feasible hosts, placement in the request's node
// order. Used as the reference point for learned allocation quality.
class RandomSolver : public Solver {
 public:
  explicit RandomSolver(std::uint64_t seed);
  std::string name() const override;
  void begin(const PhysicalNetwork& net) override;
  bool admit(PhysicalNetwork& net, const VirtualNetwork& vnr) override;
  EmbeddingSolution allocate(PhysicalNetwork& net, const VirtualNetwork& vnr) override;

 private:
  std::uint64_t seed_;
  Rng rng_;
};

}  // namespace vne
