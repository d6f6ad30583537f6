#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vne/embedding.hpp"
#include "vne/topology.hpp"

namespace vne {

struct PricingWeights {
  double w_a = 1.0;  // starting price weight
  double w_b = 0.0;  // service-time charge weight
};

struct SimulationEvent {
  double time = 0.0;
  enum class Kind { Arrival, Departure } kind = Kind::Arrival;
  int vnr_id = -1;
};

struct DecisionRecord {
  int vnr_id = -1;
  bool admitted = false;
  bool embedded = false;
  double revenue = 0.0;
  double cost = 0.0;
  double elapsed_sec = 0.0;
  std::string to_jsonl() const;
};

struct MetricsAccumulator {
  long accepted = 0;
  long total = 0;
  double revenue_sum = 0.0;  // lifetime-weighted revenue of accepted requests
  std::vector<double> rc_ratios;
  double wall_clock_sec = 0.0;
  PricingWeights pricing;
  bool valid = true;
  std::string error;
};

double acceptance_ratio(const MetricsAccumulator& m);
double long_term_avg_revenue(const MetricsAccumulator& m);
double mean_rc_ratio(const MetricsAccumulator& m);

// One run CSV row: seed, AC_Ratio, LA_Rev, mean R/C, wall_clock.
std::string metrics_csv_header();
std::string metrics_csv_row(std::uint64_t seed, const MetricsAccumulator& m);

// Admission plus allocation behind one interface. `allocate` must leave the
// network untouched when it fails; on success its deductions stay committed.
class Solver {
 public:
  virtual ~Solver() = default;
  virtual std::string name() const = 0;
  // Called once per simulation before the first arrival.
  virtual void begin(const PhysicalNetwork& net) { (void)net; }
  virtual bool admit(PhysicalNetwork& net, const VirtualNetwork& vnr) = 0;
  virtual EmbeddingSolution allocate(PhysicalNetwork& net, const VirtualNetwork& vnr) = 0;
};

struct SimulationOptions {
  PricingWeights pricing;
  // Invoked after every admission decision.
  std::function<void(const DecisionRecord&)> on_decision;
  // Conservation and constraint scan after every event.
  bool validate = true;
};

// Discrete-event loop: arrivals consult the solver, successful embeddings
// schedule departures, departures free resources. Departures sharing a
// timestamp with an arrival are processed first. Solver exceptions flag the
// returned metrics invalid and end the run early.
MetricsAccumulator run_simulation(PhysicalNetwork net, const std::vector<VirtualNetwork>& vnrs,
                                  Solver& solver, const SimulationOptions& opts = {});

}  // namespace vne
