#include "momcbe/cbe_mc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>
#include <vector>

#include "momcbe/errors.hpp"
#include "momcbe/rng.hpp"

namespace momcbe {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi_v<double>;

double wrap_angle(double a) {
  a = std::fmod(a, two_pi);
  return a < 0.0 ? a + two_pi : a;
}

// log|e^{ia} - e^{ib}| = log(2|sin((a-b)/2)|)
double log_chord(double a, double b) {
  const double s = std::abs(std::sin(0.5 * (a - b)));
  return s == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(2.0 * s);
}

void require_config(const mc_config& cfg) {
  if (cfg.chains < 1 || cfg.burnin_sweeps < 0 || cfg.thin_sweeps < 1 || cfg.kept_per_chain < 1 ||
      cfg.step < 0.0) {
    throw contract_error("mc_config: need chains >= 1, burnin >= 0, thin >= 1, kept >= 1, step >= 0");
  }
}

struct chain_output {
  std::vector<std::vector<double>> states;
  uint64_t proposals = 0;
  uint64_t accepted = 0;
};

chain_output run_chain(int N, double beta, const mc_config& cfg, int chain) {
  philox_stream rng(cfg.seed, static_cast<uint64_t>(chain));
  const double step = cfg.step > 0.0 ? cfg.step : std::numbers::pi_v<double> / std::sqrt(N);

  std::vector<double> theta(N);
  const double rot = rng.next_unit();
  for (int j = 0; j < N; ++j) theta[j] = wrap_angle(two_pi * (j + rot) / N);

  chain_output out;
  out.states.reserve(cfg.kept_per_chain);
  bool counting = false;

  auto sweep = [&]() {
    for (int j = 0; j < N; ++j) {
      const double offset = (2.0 * rng.next_unit() - 1.0) * step;
      const double proposed = wrap_angle(theta[j] + offset);
      double delta = 0.0;
      for (int l = 0; l < N; ++l) {
        if (l == j) continue;
        delta += log_chord(proposed, theta[l]) - log_chord(theta[j], theta[l]);
      }
      delta *= beta;
      // The acceptance draw happens unconditionally so each proposal consumes
      // exactly two stream values.
      const double u = rng.next_unit();
      const bool accept = std::log(u) < delta;
      if (counting) {
        ++out.proposals;
        if (accept) ++out.accepted;
      }
      if (accept) theta[j] = proposed;
    }
  };

  for (int s = 0; s < cfg.burnin_sweeps; ++s) sweep();
  counting = true;
  for (int kept = 0; kept < cfg.kept_per_chain; ++kept) {
    for (int s = 0; s < cfg.thin_sweeps; ++s) sweep();
    out.states.push_back(theta);
  }
  return out;
}

}  // namespace

double log_density_unnorm(const std::vector<double>& angles, double beta) {
  if (!(beta > 0.0)) throw contract_error("log_density_unnorm: beta must be positive");
  const int N = static_cast<int>(angles.size());
  double acc = 0.0;
  for (int j = 0; j < N; ++j) {
    for (int l = j + 1; l < N; ++l) acc += log_chord(angles[j], angles[l]);
  }
  return beta * acc;
}

chain_stats sample_cbe(int N, double beta, const mc_config& cfg,
                       const std::function<void(int chain, const std::vector<double>&)>& sink) {
  if (N < 1) throw contract_error("sample_cbe: N must be >= 1");
  if (!(beta > 0.0)) throw contract_error("sample_cbe: beta must be positive");
  require_config(cfg);

  std::vector<chain_output> outputs(cfg.chains);
  const int workers = std::max(1, std::min(cfg.workers, cfg.chains));
  if (workers == 1) {
    for (int c = 0; c < cfg.chains; ++c) outputs[c] = run_chain(N, beta, cfg, c);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        for (int c = w; c < cfg.chains; c += workers) outputs[c] = run_chain(N, beta, cfg, c);
      });
    }
    for (auto& t : pool) t.join();
  }

  chain_stats stats;
  for (int c = 0; c < cfg.chains; ++c) {
    stats.proposals += outputs[c].proposals;
    stats.accepted += outputs[c].accepted;
    for (const auto& state : outputs[c].states) sink(c, state);
  }
  return stats;
}

double partition_function_z(const std::vector<double>& angles, int q) {
  if (q < 1) throw contract_error("partition_function_z: q must be a positive integer");
  const int N = static_cast<int>(angles.size());
  const int points = 2 * N * q + 1;
  double total = 0.0;
  for (int l = 0; l < points; ++l) {
    const double t = two_pi * l / points;
    double prod = 1.0;
    for (int j = 0; j < N; ++j) prod *= 2.0 - 2.0 * std::cos(t - angles[j]);
    double p = 1.0;
    for (int e = 0; e < q; ++e) p *= prod;
    total += p;
  }
  return total / points;
}

mom_mc_result mom_mc(const array_spec& spec, double beta, const mc_config& cfg) {
  if (!spec_valid(spec) || spec.N < 1) {
    throw contract_error("mom_mc: need N >= 1, k >= 1, q >= 1");
  }

  std::vector<std::vector<double>> values(cfg.chains);
  for (auto& v : values) v.reserve(cfg.kept_per_chain);
  chain_stats stats = sample_cbe(spec.N, beta, cfg, [&](int chain, const std::vector<double>& st) {
    const double z = partition_function_z(st, spec.q);
    double x = 1.0;
    for (int e = 0; e < spec.k; ++e) x *= z;
    values[chain].push_back(x);
  });

  mom_mc_result res;
  res.stats = stats;

  double grand_sum = 0.0, grand_sumsq = 0.0;
  uint64_t n_total = 0;
  for (const auto& v : values) {
    for (double x : v) {
      grand_sum += x;
      grand_sumsq += x * x;
      ++n_total;
    }
  }
  res.kept = n_total;
  res.mean = grand_sum / static_cast<double>(n_total);
  const double sample_var =
      n_total > 1
          ? std::max(0.0, (grand_sumsq - grand_sum * grand_sum / static_cast<double>(n_total)) /
                              static_cast<double>(n_total - 1))
          : 0.0;

  // Batch means within each chain absorb autocorrelation; chains are
  // independent, so their mean-variances add.
  const int n = cfg.kept_per_chain;
  const int batch_len = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(n))));
  const int batches = n / batch_len;
  double var_of_mean = 0.0;
  bool batches_ok = batches >= 2;
  if (batches_ok) {
    for (const auto& v : values) {
      std::vector<double> means(batches);
      for (int b = 0; b < batches; ++b) {
        double s = 0.0;
        for (int i = 0; i < batch_len; ++i) s += v[b * batch_len + i];
        means[b] = s / batch_len;
      }
      double mb = 0.0;
      for (double m : means) mb += m;
      mb /= batches;
      double sb = 0.0;
      for (double m : means) sb += (m - mb) * (m - mb);
      sb /= (batches - 1);
      var_of_mean += sb / batches;  // variance of this chain's mean
    }
    var_of_mean /= static_cast<double>(cfg.chains) * cfg.chains;
  }

  if (sample_var == 0.0) {
    // Degenerate integrand (e.g. N = 1, where Z is the same for every state).
    res.se = 0.0;
    res.ess = static_cast<double>(n_total);
    res.se_valid = true;
    return res;
  }
  if (!batches_ok || var_of_mean <= 0.0) {
    res.se = std::numeric_limits<double>::quiet_NaN();
    res.ess = 0.0;
    res.se_valid = false;
    return res;
  }
  res.se = std::sqrt(var_of_mean);
  res.ess = sample_var / var_of_mean;
  res.se_valid = res.ess >= 100.0;
  if (!res.se_valid) res.se = std::numeric_limits<double>::quiet_NaN();
  return res;
}

}  // namespace momcbe
