#include "momcbe/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <string>
#include <thread>

#include "momcbe/errors.hpp"
#include "momcbe/rng.hpp"

namespace momcbe {

namespace {

void require_kq(int k, int q) {
  if (k < 1 || q < 1) throw contract_error("need k >= 1 and q >= 1");
}

double delta_of(double beta) {
  if (!(beta > 0.0)) throw contract_error("beta must be positive");
  return 2.0 / beta;
}

double log_beta_fn(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

struct mc_accumulator {
  double sum = 0.0;
  double sumsq = 0.0;
  uint64_t contributing = 0;
};

// Splits the budget over per-worker counter streams and pools the raw sums in
// worker order, so the estimate depends only on (seed, workers).
mc_estimate run_weighted_mc(uint64_t budget, uint64_t seed, int workers, double log_scale,
                            const std::function<double(philox_stream&)>& draw) {
  if (budget < 2) throw contract_error("mc budget must be at least 2");
  workers = std::max(1, workers);
  std::vector<mc_accumulator> acc(workers);
  auto run = [&](int w) {
    philox_stream rng(seed, static_cast<uint64_t>(w));
    const uint64_t quota = budget / workers + (static_cast<uint64_t>(w) < budget % workers ? 1 : 0);
    for (uint64_t i = 0; i < quota; ++i) {
      const double x = draw(rng);
      acc[w].sum += x;
      acc[w].sumsq += x * x;
      if (x != 0.0) ++acc[w].contributing;
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& t : pool) t.join();
  }
  double sum = 0.0, sumsq = 0.0;
  uint64_t contributing = 0;
  for (const auto& a : acc) {
    sum += a.sum;
    sumsq += a.sumsq;
    contributing += a.contributing;
  }
  const double n = static_cast<double>(budget);
  const double mean = sum / n;
  const double var = std::max(0.0, (sumsq - sum * sum / n) / (n - 1.0));
  const double scale = std::exp(log_scale);
  mc_estimate est;
  est.value = scale * mean;
  est.se = scale * std::sqrt(var / n);
  est.samples = budget;
  est.contributing = contributing;
  est.acceptance = static_cast<double>(contributing) / n;
  est.low_acceptance = est.acceptance < 1e-4;
  return est;
}

int folded_length(int k, int q, int chain_row) { return std::min(chain_row, 2 * k * q - chain_row); }

bool row_constrained(int q, int level) { return level % (2 * q) == 0; }

// Scaled prescribed sum for a constrained folded row of the given level.
double row_target(int level) { return 0.5 * level; }

}  // namespace

double growth_exponent(int k, int q, double beta) {
  require_kq(k, q);
  const double kq = static_cast<double>(k) * q;
  return delta_of(beta) * kq * kq - (k - 1);
}

rational growth_exponent_exact(int k, int q, const rational& beta) {
  require_kq(k, q);
  if (beta <= 0) throw contract_error("beta must be positive");
  const rational kq(static_cast<long>(k) * q);
  return rational(2) / beta * kq * kq - (k - 1);
}

double coeff_k1(int q, double beta) {
  require_kq(1, q);
  const double d = delta_of(beta);
  double lg = 0.0;
  for (int i = 1; i <= q; ++i) lg += std::lgamma(d * i) - std::lgamma(d * (q + i));
  return std::exp(lg);
}

double coeff_k1_gamma_scaled(double t, int q) {
  require_kq(1, q);
  if (!(t > 0.0)) throw contract_error("coeff_k1_gamma_scaled: t must be positive");
  double lg = static_cast<double>(q) * q * std::lgamma(t);
  for (int j = 1; j <= q; ++j) lg += std::lgamma(t * j) - std::lgamma(t * (q + j));
  return std::exp(lg);
}

mc_estimate coeff_k1_integral(int q, double beta, uint64_t budget, uint64_t seed, int workers) {
  require_kq(1, q);
  const double d = delta_of(beta);
  const double two_d = 2.0 * d;

  // Chamber integral rewritten over iid Beta(d, d) coordinates: the edge
  // factors [x(1-x)]^(d-1) cancel against the proposal density, leaving the
  // bounded pair product, one Beta normalizer per coordinate, and 1/q! for
  // the sort.
  double log_scale = -std::lgamma(q + 1.0);
  for (int M = 1; M <= q; ++M) log_scale += std::lgamma(d) - 2.0 * std::lgamma(M * d);
  log_scale += q * log_beta_fn(d, d);

  auto draw = [q, two_d, d](philox_stream& rng) {
    std::vector<double> x(q);
    for (int i = 0; i < q; ++i) x[i] = sample_beta(rng, d, d);
    double w = 1.0;
    for (int i = 0; i < q; ++i) {
      for (int j = i + 1; j < q; ++j) w *= std::pow(std::abs(x[i] - x[j]), two_d);
    }
    return w;
  };
  mc_estimate est = run_weighted_mc(budget, seed, workers, log_scale, draw);
  est.variance_reliable = true;  // weights are bounded by 1
  return est;
}

mc_estimate coeff_k2(int q, double beta, uint64_t budget, uint64_t seed, int workers) {
  require_kq(2, q);
  const double d = delta_of(beta);
  const long threshold = 4L * q * q;
  if (beta >= static_cast<double>(threshold)) {
    throw divergence_error("k = 2 coefficient integral is infinite for beta >= 4q^2 = " +
                           std::to_string(threshold) + " (finite domain is (0, " +
                           std::to_string(threshold) + "))");
  }
  const int n_free = 2 * q - 1;
  const double two_d = 2.0 * d;
  const double target = static_cast<double>(q);

  double log_scale = -std::lgamma(2.0 * q);  // 1/(2q-1)!
  for (int M = 1; M <= 2 * q; ++M) log_scale += std::lgamma(d) - 2.0 * std::lgamma(M * d);
  log_scale += n_free * log_beta_fn(d, d);

  auto draw = [n_free, two_d, d, target](philox_stream& rng) {
    std::vector<double> y(n_free);
    double s = 0.0, lo = 1.0;
    for (int i = 0; i < n_free; ++i) {
      y[i] = sample_beta(rng, d, d);
      s += y[i];
      lo = std::min(lo, y[i]);
    }
    const double last = target - s;
    if (!(last > 0.0 && last < 1.0 && last <= lo)) return 0.0;
    double w = std::pow(last * (1.0 - last), d - 1.0);
    for (int i = 0; i < n_free; ++i) {
      w *= std::pow(std::abs(y[i] - last), two_d);
      for (int j = i + 1; j < n_free; ++j) w *= std::pow(std::abs(y[i] - y[j]), two_d);
    }
    return w;
  };
  mc_estimate est = run_weighted_mc(budget, seed, workers, log_scale, draw);
  // Second-moment power counting at the eliminated coordinate's 0/1 edges:
  // its proposal-induced density is ~ t^(d-1) when q = 1 (Beta tail) and
  // bounded away from zero when q >= 2.
  est.variance_reliable = (q == 1) ? (d > 2.0 / 3.0) : (d > 0.5);
  return est;
}

mc_estimate coeff_general(int k, int q, double beta, uint64_t budget, uint64_t seed, int workers) {
  require_kq(k, q);
  const double d = delta_of(beta);
  const bool beta_proposals = d < 1.0;
  const int kq = k * q;
  const int chain_len = 2 * kq - 1;

  bool conjectured = false;
  if (k == 2 && beta >= 4.0 * q * q) {
    throw divergence_error("coefficient integral is infinite for beta >= 4q^2 = " +
                           std::to_string(4L * q * q));
  }
  if (k >= 3) {
    const double hard = 2.0 * k * q * q;
    if (beta >= hard) {
      throw divergence_error("coefficient integral is infinite for beta >= 2kq^2 = " +
                             std::to_string(2L * k * q * q));
    }
    conjectured = beta > 2.0;
  }

  const bool center_constrained = row_constrained(q, kq);
  const int n_prop = center_constrained ? kq - 1 : kq;
  const double center_target = row_target(kq);

  double log_scale = -static_cast<double>(kq) * kq * std::lgamma(d) - std::lgamma(n_prop + 1.0);
  if (beta_proposals) log_scale += n_prop * log_beta_fn(d, d);

  // Draws one array and returns F / proposal with the center edge factors of
  // the proposal coordinates cancelled analytically under Beta proposals.
  auto draw = [k, q, kq, chain_len, d, beta_proposals, center_constrained, n_prop,
               center_target](philox_stream& rng) -> double {
    std::vector<std::vector<double>> rows(chain_len);
    double lw = 0.0;

    // Center row: sorted proposal draws, plus the eliminated coordinate when
    // the center carries a sum constraint.
    std::vector<double>& center = rows[kq - 1];
    center.resize(n_prop);
    double csum = 0.0;
    for (int i = 0; i < n_prop; ++i) {
      center[i] = beta_proposals ? sample_beta(rng, d, d) : rng.next_unit();
      csum += center[i];
    }
    std::sort(center.begin(), center.end(), std::greater<>());
    if (center_constrained) {
      const double last = center_target - csum;
      if (!(last > 0.0 && last < 1.0 && (center.empty() || last <= center.back()))) return 0.0;
      lw += (d - 1.0) * std::log(last * (1.0 - last));
      center.push_back(last);
    }
    if (!beta_proposals) {
      for (int i = 0; i < n_prop; ++i) {
        const double e = center[i] * (1.0 - center[i]);
        if (e <= 0.0) return 0.0;
        lw += (d - 1.0) * std::log(e);
      }
    }

    // Side rows, from the center outward; each unconstrained coordinate is
    // uniform in its interlacing box (importance weight = box width), each
    // constrained row eliminates its last coordinate and rejects misses.
    auto fill_below = [&](const std::vector<double>& above, int level,
                          std::vector<double>& out) -> bool {
      const int m = level;
      out.resize(m);
      const bool constrained = row_constrained(q, level);
      const int drawn = constrained ? m - 1 : m;
      double s = 0.0;
      for (int i = 0; i < drawn; ++i) {
        const double hi = above[i], lo = above[i + 1];
        const double width = hi - lo;
        if (!(width > 0.0)) return false;
        out[i] = lo + width * rng.next_unit();
        lw += std::log(width);
        s += out[i];
      }
      if (constrained) {
        const double last = row_target(level) - s;
        if (!(last >= above[m] && last <= above[m - 1])) return false;
        out[m - 1] = last;
      }
      return true;
    };

    for (int i = kq - 2; i >= 0; --i) {
      if (!fill_below(rows[i + 1], i + 1, rows[i])) return 0.0;
    }
    for (int i = kq; i < chain_len; ++i) {
      if (!fill_below(rows[i - 1], 2 * kq - i - 1, rows[i])) return 0.0;
    }

    // Same-row factors on every folded row (center included, once) and cross
    // factors between every adjacent folded pair.
    for (const auto& row : rows) {
      const int m = static_cast<int>(row.size());
      for (int a = 0; a < m; ++a) {
        for (int b = a + 1; b < m; ++b) {
          const double diff = row[a] - row[b];
          if (diff == 0.0) return 0.0;
          lw += (2.0 - 2.0 * d) * std::log(diff);
        }
      }
    }
    for (int i = 0; i + 1 < chain_len; ++i) {
      for (double a : rows[i]) {
        for (double b : rows[i + 1]) {
          const double diff = std::abs(a - b);
          if (diff == 0.0) return 0.0;
          lw += (d - 1.0) * std::log(diff);
        }
      }
    }
    return std::exp(lw);
  };

  mc_estimate est = run_weighted_mc(budget, seed, workers, log_scale, draw);
  est.conjectured_finite = conjectured;
  // Power-counting heuristic: cross-factor collisions need d > 1/2 (with the
  // Beta-tail hyperplane case pushing to d > 2/3), coalescing same-row
  // factors need d < 5/4. A single-coordinate array has neither.
  est.variance_reliable = (kq == 1) || (d > 2.0 / 3.0 && d < 1.25);
  return est;
}

rational linear_form::at_beta(const rational& beta) const {
  if (beta <= 0) throw contract_error("beta must be positive");
  return constant + delta_coeff * (rational(2) / beta);
}

array_point x_point(int k, int q) {
  require_kq(k, q);
  if (k < 2) throw contract_error("x_point: defined for k >= 2 (no sum constraints otherwise)");
  array_point p;
  p.k = k;
  p.q = q;
  const int chain_len = 2 * k * q - 1;
  p.rows.resize(chain_len);
  for (int r = 1; r <= chain_len; ++r) {
    const int L = folded_length(k, q, r);
    const int t = (r - 1) % (2 * q) + 1;
    const int free_count = (t == 2 * q) ? 0 : q - std::abs(t - q);
    if (free_count > L || (L - free_count) % 2 != 0) {
      throw numeric_error("x_point: internal shape mismatch");
    }
    const int pinned = (L - free_count) / 2;
    std::vector<int>& row = p.rows[r - 1];
    row.assign(L, -1);
    for (int i = 0; i < pinned; ++i) row[i] = 1;
    for (int i = L - pinned; i < L; ++i) row[i] = 0;
  }
  return p;
}

bool point_consistent(const array_point& p) {
  if (p.k < 1 || p.q < 1) return false;
  const int chain_len = 2 * p.k * p.q - 1;
  if (static_cast<int>(p.rows.size()) != chain_len) return false;
  for (int r = 1; r <= chain_len; ++r) {
    const std::vector<int>& row = p.rows[r - 1];
    if (static_cast<int>(row.size()) != folded_length(p.k, p.q, r)) return false;
    bool seen_zero = false;
    for (int v : row) {
      if (v != -1 && v != 0 && v != 1) return false;
      if (v == 0) seen_zero = true;
      if (v == 1 && seen_zero) return false;  // values must stay weakly decreasing
    }
  }
  // interlacing between adjacent folded rows, on assigned entries only
  for (int i = 0; i + 1 < chain_len; ++i) {
    const bool ascending = (i + 1) < p.k * p.q;
    const std::vector<int>& shorter = ascending ? p.rows[i] : p.rows[i + 1];
    const std::vector<int>& longer = ascending ? p.rows[i + 1] : p.rows[i];
    for (size_t j = 0; j < shorter.size(); ++j) {
      if (shorter[j] != -1 && longer[j] != -1 && shorter[j] > longer[j]) return false;
      if (shorter[j] != -1 && longer[j + 1] != -1 && shorter[j] < longer[j + 1]) return false;
    }
  }
  // sum-constrained rows must be able to reach their target
  for (int r = 1; r <= chain_len; ++r) {
    const int level = folded_length(p.k, p.q, r);
    if (!row_constrained(p.q, level)) continue;
    const std::vector<int>& row = p.rows[r - 1];
    long ones = 0, frees = 0;
    for (int v : row) {
      if (v == 1) ++ones;
      if (v == -1) ++frees;
    }
    const long target = static_cast<long>(level) / 2;
    if (ones > target || ones + frees < target) return false;
  }
  return true;
}

long point_codimension(const array_point& p) {
  if (!point_consistent(p)) throw contract_error("point_codimension: inconsistent assignment");
  const int chain_len = 2 * p.k * p.q - 1;
  long assigned = 0;
  long saturated_constraints = 0;
  for (int r = 1; r <= chain_len; ++r) {
    long a = 0;
    for (int v : p.rows[r - 1]) {
      if (v != -1) ++a;
    }
    assigned += a;
    const int level = folded_length(p.k, p.q, r);
    if (row_constrained(p.q, level) && a == static_cast<long>(p.rows[r - 1].size())) {
      ++saturated_constraints;
    }
  }
  return assigned - saturated_constraints;
}

linear_form singularity_order(const array_point& p) {
  if (!point_consistent(p)) throw contract_error("singularity_order: inconsistent assignment");
  const int kq = p.k * p.q;
  const int chain_len = 2 * kq - 1;

  long boundary = 0;
  for (int v : p.rows[kq - 1]) {
    if (v != -1) ++boundary;
  }
  long same_row = 0;
  for (const auto& row : p.rows) {
    const int m = static_cast<int>(row.size());
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        if (row[a] != -1 && row[a] == row[b]) ++same_row;
      }
    }
  }
  long consecutive = 0;
  for (int i = 0; i + 1 < chain_len; ++i) {
    for (int a : p.rows[i]) {
      for (int b : p.rows[i + 1]) {
        if (a != -1 && a == b) ++consecutive;
      }
    }
  }
  const long n = boundary + consecutive - 2 * same_row;
  return linear_form{rational(n), rational(-n)};
}

linear_form singularity_order_row(int q, int n_ones, int n_zeros) {
  require_kq(2, q);
  if (n_ones < 0 || n_zeros < 0 || n_ones > q || n_zeros > q) {
    throw contract_error("singularity_order_row: need 0 <= n_ones, n_zeros <= q");
  }
  const long c = n_ones + n_zeros;
  const long sq = static_cast<long>(n_ones) * n_ones + static_cast<long>(n_zeros) * n_zeros;
  return linear_form{rational(c), rational(-sq)};
}

rational threshold_beta(const linear_form& order, long codimension) {
  if (order.delta_coeff == 0) throw contract_error("threshold_beta: order does not depend on beta");
  const rational d_star = (rational(codimension) - order.constant) / order.delta_coeff;
  if (d_star <= 0) throw contract_error("threshold_beta: no positive solution");
  return rational(2) / d_star;
}

finiteness_report finiteness_domain(int k, int q) {
  require_kq(k, q);
  finiteness_report rep;
  rep.k = k;
  rep.q = q;
  const rational qq = rational(q) * q;
  if (k == 1) {
    rep.always_finite = true;
  } else if (k == 2) {
    rep.proven_finite_to = 4 * qq;
    rep.proven_bound_inclusive = false;
    rep.infinite_from = 4 * qq;
  } else {
    rep.proven_finite_to = 2;
    rep.proven_bound_inclusive = true;
    rep.infinite_from = 2 * k * qq;
    rep.conjectured_to = 2 * k * qq;
  }
  return rep;
}

finiteness_status finiteness_status_of(int k, int q, const rational& beta) {
  require_kq(k, q);
  if (beta <= 0) throw contract_error("beta must be positive");
  if (k == 1) return finiteness_status::finite;
  const rational qq = rational(q) * q;
  if (k == 2) {
    return beta < 4 * qq ? finiteness_status::finite : finiteness_status::infinite;
  }
  if (beta <= 2) return finiteness_status::finite;
  if (beta >= 2 * k * qq) return finiteness_status::infinite;
  return finiteness_status::conjectured_finite;
}

ratio_table asymptotic_ratio(int k, int q, const rational& beta, const std::vector<int>& Ns,
                             ratio_method method, const dp_limits& dp, const mc_config& mc) {
  require_kq(k, q);
  if (beta <= 0) throw contract_error("beta must be positive");
  if (Ns.size() < 3) throw contract_error("asymptotic_ratio: need at least 3 N values for a slope fit");
  const double beta_d = to_double(beta);
  const rational delta = rational(2) / beta;

  ratio_table table;
  table.slope_target = growth_exponent(k, q, beta_d);
  table.coefficient =
      (k == 1) ? coeff_k1(q, beta_d) : std::numeric_limits<double>::quiet_NaN();

  for (int N : Ns) {
    if (N < 1) throw contract_error("asymptotic_ratio: N values must be >= 1");
    const array_spec spec{N, k, q};
    double mom = 0.0;
    if (method == ratio_method::exact) {
      mom = to_double(mom_exact(spec, delta, dp));
    } else {
      mc_config cfg = mc;
      cfg.seed = mc.seed + static_cast<uint64_t>(N);  // decorrelate the per-N runs
      mom = mom_mc(spec, beta_d, cfg).mean;
    }
    const double ratio = mom / std::pow(static_cast<double>(N), table.slope_target);
    table.rows.push_back(ratio_row{N, mom, ratio});
  }

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(table.rows.size());
  for (const auto& row : table.rows) {
    const double x = std::log(static_cast<double>(row.N));
    const double y = std::log(row.mom);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = sxx - sx * sx / n;
  if (!(denom > 0.0)) throw contract_error("asymptotic_ratio: N values must not all coincide");
  table.slope = (sxy - sx * sy / n) / denom;
  return table;
}

}  // namespace momcbe
