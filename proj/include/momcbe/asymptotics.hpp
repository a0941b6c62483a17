#pragma once
#include <cstdint>
#include <vector>

#include "momcbe/cbe_mc.hpp"
#include "momcbe/mom.hpp"
#include "momcbe/rational.hpp"

namespace momcbe {

// Growth exponent (2/beta)(kq)^2 - (k - 1) of the N-th moment of moments.
double growth_exponent(int k, int q, double beta);
rational growth_exponent_exact(int k, int q, const rational& beta);

// Closed-form leading coefficient for k = 1: prod_i Gamma(di) / Gamma(d(q+i))
// with d = 2/beta. Finite and positive for every beta > 0.
double coeff_k1(int q, double beta);

// Gamma(t)^(q^2) * prod_j Gamma(tj)/Gamma(t(q+j)); non-increasing in t on
// (0, inf), which is the monotonicity behind the coefficient comparison
// inequality.
double coeff_k1_gamma_scaled(double t, int q);

struct mc_estimate {
  double value = 0.0;
  double se = 0.0;
  uint64_t samples = 0;        // proposals drawn
  uint64_t contributing = 0;   // samples with nonzero weight
  double acceptance = 0.0;     // contributing / samples
  bool variance_reliable = true;
  bool low_acceptance = false;     // acceptance < 1e-4
  bool conjectured_finite = false; // k >= 3 with beta in the open regime
};

// Monte Carlo of the k = 1 coefficient as a prefactored chamber integral with
// Beta(d, d) proposals (bounded weights, so the error bar is always sound).
// Must agree with coeff_k1 within statistical error.
mc_estimate coeff_k1_integral(int q, double beta, uint64_t budget, uint64_t seed, int workers = 1);

// Monte Carlo of the k = 2 coefficient: single sum-constrained row of 2q
// coordinates, last coordinate eliminated, Lebesgue on the remaining 2q - 1.
// Refuses beta >= 4q^2 where the integral is infinite.
mc_estimate coeff_k2(int q, double beta, uint64_t budget, uint64_t seed, int workers = 1);

// Monte Carlo of the general-k coefficient over continuous center-joined
// interlacing arrays: center row sampled sorted-iid (Beta(d, d) when d < 1,
// uniform otherwise), lower rows uniform in their interlacing boxes,
// sum-constrained rows eliminate their last coordinate and reject misses.
// Refuses beta where the integral is provably infinite; flags the
// conjectured regime for k >= 3 instead of refusing.
mc_estimate coeff_general(int k, int q, double beta, uint64_t budget, uint64_t seed,
                          int workers = 1);

// Order of an integrand singularity as a function of d = 2/beta:
// constant + delta_coeff * d.
struct linear_form {
  rational constant = 0;
  rational delta_coeff = 0;
  rational at_beta(const rational& beta) const;
};

// Partial 0/1 assignment on the folded rows of the continuous array, in chain
// order (lengths 1, ..., kq, ..., 1); -1 marks an unassigned coordinate.
struct array_point {
  int k = 1;
  int q = 1;
  std::vector<std::vector<int>> rows;
};

// The canonical most-singular assignment: every coordinate not forced free by
// the sum constraints is pushed to 0 or 1.
array_point x_point(int k, int q);

// Whether the assignment extends to a valid array (ordering, interlacing,
// and sum-constraint feasibility).
bool point_consistent(const array_point& p);

// Number of independent integration variables pinned by the assignment
// (assigned coordinates, minus one per fully assigned sum-constrained row).
long point_codimension(const array_point& p);

// Singularity order by particle counting: (#center coordinates at 0 or 1)
// + (#equal-value pairs on consecutive rows) - 2 (#equal-value pairs on the
// same row), times (1 - d). Throws on inconsistent points.
linear_form singularity_order(const array_point& p);

// Same counting on the single sum-constrained row of the k = 2 reduction,
// with n_ones coordinates at 1 and n_zeros at 0:
// (n0 + n1) - (n0^2 + n1^2) d.
linear_form singularity_order_row(int q, int n_ones, int n_zeros);

// Solves order(d) = codimension for d and returns beta = 2/d, exactly.
rational threshold_beta(const linear_form& order, long codimension);

enum class finiteness_status { finite, infinite, conjectured_finite };

struct finiteness_report {
  int k = 1;
  int q = 1;
  bool always_finite = false;   // k == 1
  rational proven_finite_to;    // k = 2: 4q^2 (exclusive); k >= 3: 2 (inclusive)
  bool proven_bound_inclusive = false;
  rational infinite_from;       // k = 2: 4q^2; k >= 3: 2kq^2 (both inclusive)
  rational conjectured_to;      // k >= 3: 2kq^2 (exclusive), else 0
};

finiteness_report finiteness_domain(int k, int q);
finiteness_status finiteness_status_of(int k, int q, const rational& beta);

enum class ratio_method { exact, monte_carlo };

struct ratio_row {
  int N = 0;
  double mom = 0.0;
  double ratio = 0.0;  // mom / N^exponent
};

struct ratio_table {
  std::vector<ratio_row> rows;
  double slope = 0.0;         // least-squares slope of log mom vs log N
  double slope_target = 0.0;  // growth_exponent(k, q, beta)
  double coefficient = 0.0;   // closed-form limit when k == 1, else NaN
};

// Ratios MoM_N / N^exponent over at least three N values plus the fitted
// log-log slope.
ratio_table asymptotic_ratio(int k, int q, const rational& beta, const std::vector<int>& Ns,
                             ratio_method method, const dp_limits& dp = {},
                             const mc_config& mc = {});

}  // namespace momcbe
