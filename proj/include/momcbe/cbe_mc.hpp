#pragma once
#include <cstdint>
#include <functional>
#include <vector>

#include "momcbe/arrays.hpp"

namespace momcbe {

struct mc_config {
  uint64_t seed = 1;
  int chains = 4;
  int burnin_sweeps = 1000;
  int thin_sweeps = 1;       // sweeps (N single-angle proposals each) between kept states
  int kept_per_chain = 2000;
  double step = 0.0;         // proposal half-width; 0 selects pi / sqrt(N)
  int workers = 1;           // schedules chains only; results depend on (seed, chains) alone
};

struct chain_stats {
  uint64_t proposals = 0;
  uint64_t accepted = 0;
  double acceptance_rate() const {
    return proposals ? static_cast<double>(accepted) / static_cast<double>(proposals) : 0.0;
  }
  // Diagnostic band for the post-burn-in acceptance rate; outside is a
  // warning, not an error.
  bool acceptance_in_band() const {
    const double r = acceptance_rate();
    return r >= 0.1 && r <= 0.9;
  }
};

// beta * sum_{j<k} log|e^{i a_j} - e^{i a_k}|; -inf on coincidence.
double log_density_unnorm(const std::vector<double>& angles, double beta);

// Metropolis sampler for the circular beta-repulsion density. Kept states are
// delivered to `sink` in chain-major order (chain 0 first), a fixed order
// independent of worker scheduling. Returned stats cover post-burn-in
// proposals pooled over chains.
chain_stats sample_cbe(int N, double beta, const mc_config& cfg,
                       const std::function<void(int chain, const std::vector<double>&)>& sink);

// (1/2pi) * integral of prod_j (2 - 2cos(t - a_j))^q dt, via the periodic
// trapezoid rule with 2Nq + 1 points (exact for this trigonometric
// polynomial up to rounding).
double partition_function_z(const std::vector<double>& angles, int q);

struct mom_mc_result {
  double mean = 0.0;
  double se = 0.0;
  double ess = 0.0;
  bool se_valid = false;  // false when effective samples < 100
  uint64_t kept = 0;
  chain_stats stats;
};

// Sample mean of Z(q)^k over the chain stream with a batch-means standard
// error; refuses to certify the error bar when the effective sample count is
// below 100.
mom_mc_result mom_mc(const array_spec& spec, double beta, const mc_config& cfg);

}  // namespace momcbe
