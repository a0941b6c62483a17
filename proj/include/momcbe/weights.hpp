#pragma once
#include <vector>

#include "momcbe/rational.hpp"
#include "momcbe/signature.hpp"

namespace momcbe {

// Branching weight attached to an interlacing pair mu ≺ la at parameter
// delta > 0, as a product of rising-factorial ratios. Identically 1 at
// delta == 1. Throws contract_error unless mu ≺ la and delta > 0.
rational psi(const signature& mu, const signature& la, const rational& delta);

// The same weight assembled from Gamma-function ratios whose arguments differ
// by integers, so every ratio collapses to an exact rational. Kept as a
// separate code path; must agree with psi exactly.
rational psi_gamma_form(const signature& mu, const signature& la, const rational& delta);

// Weak continuous interlacing: x_{i+1} <= y_i <= x_i.
bool interlaces_cont(const std::vector<double>& y, const std::vector<double>& x);

// Continuous interlacing kernel. log_phi returns the log value; coincident
// coordinates yield +inf (delta < 1) or -inf (delta > 1) according to the net
// exponent, and exactly 0 at delta == 1. phi exponentiates.
double log_phi(const std::vector<double>& y, const std::vector<double>& x, double delta);
double phi(const std::vector<double>& y, const std::vector<double>& x, double delta);

// Delta-free base product; bounded by 1 on interlacing pairs in [0, 1].
// Satisfies Gamma(delta)^M * phi = phi_base^(delta - 1).
double phi_base(const std::vector<double>& y, const std::vector<double>& x);

}  // namespace momcbe
