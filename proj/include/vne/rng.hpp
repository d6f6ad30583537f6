#pragma once

#include <cstdint>

namespace vne {

// Deterministic xoshiro256** generator seeded through splitmix64.
// Every random draw in the project goes through this class so that runs
// are reproducible independently of the standard library's distribution
// implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform in [0, 1).
  double uniform();
  // Uniform in (0, 1); never returns an exact endpoint.
  double uniform_open();
  double uniform(double lo, double hi);
  // Inclusive integer range.
  int uniform_int(int lo, int hi);
  // Exponential with the given mean; strictly positive.
  double exponential(double mean);
  // Standard normal via Box-Muller.
  double normal();
  double normal(double mean, double stddev);

  // Derives an independent substream; the parent state is not advanced.
  Rng fork(std::uint64_t stream) const;

 private:
  std::uint64_t s_[4];
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace vne
