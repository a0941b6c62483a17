#include "momcbe/weights.hpp"

#include <cmath>
#include <limits>

#include "momcbe/errors.hpp"

namespace momcbe {

namespace {

void require_pair(const signature& mu, const signature& la, const rational& delta) {
  if (delta <= 0) throw contract_error("branching weight: delta must be positive");
  if (!interlaces(mu, la)) throw contract_error("branching weight: mu must interlace la");
}

}  // namespace

rational psi(const signature& mu, const signature& la, const rational& delta) {
  require_pair(mu, la, delta);
  const int M = static_cast<int>(mu.size());
  rational result(1);
  for (int j = 1; j <= M; ++j) {
    const long m = mu[j - 1] - la[j];
    if (m == 0) continue;
    for (int i = 1; i <= j; ++i) {
      const rational shift = delta * (j - i);
      const rational base_mu = rational(mu[i - 1] - mu[j - 1]) + shift;
      const rational base_la = rational(la[i - 1] - mu[j - 1]) + shift;
      result *= pochhammer(base_mu + delta, m) * pochhammer(base_la + 1, m);
      result /= pochhammer(base_mu + 1, m) * pochhammer(base_la + delta, m);
    }
  }
  return result;
}

rational psi_gamma_form(const signature& mu, const signature& la, const rational& delta) {
  require_pair(mu, la, delta);
  const int M = static_cast<int>(mu.size());
  rational result(1);
  // Off-diagonal Gamma ratios; within each ratio the arguments differ by the
  // integer mu_j - la_{j+1}, so gamma_ratio stays exact.
  for (int i = 1; i <= M; ++i) {
    for (int j = i + 1; j <= M; ++j) {
      const long m = mu[j - 1] - la[j];
      const rational shift = delta * (j - i);
      result *= gamma_ratio(rational(mu[i - 1] - mu[j - 1]) + shift + delta, m);
      result /= gamma_ratio(rational(mu[i - 1] - mu[j - 1]) + shift + 1, m);
      result *= gamma_ratio(rational(la[i - 1] - mu[j - 1]) + shift + 1, m);
      result /= gamma_ratio(rational(la[i - 1] - mu[j - 1]) + shift + delta, m);
    }
  }
  // Diagonal block, including the 1 / Gamma(delta) per row.
  for (int i = 1; i <= M; ++i) {
    const long m = mu[i - 1] - la[i];
    result *= gamma_ratio(delta, m);
    result *= gamma_ratio(rational(la[i - 1] - mu[i - 1]) + 1, m);
    result /= gamma_ratio(rational(la[i - 1] - mu[i - 1]) + delta, m);
    result /= gamma_ratio(rational(1), m);
  }
  return result;
}

bool interlaces_cont(const std::vector<double>& y, const std::vector<double>& x) {
  if (y.size() + 1 != x.size()) return false;
  for (size_t i = 0; i < y.size(); ++i) {
    if (!(x[i] >= y[i] && y[i] >= x[i + 1])) return false;
  }
  return true;
}

double log_phi(const std::vector<double>& y, const std::vector<double>& x, double delta) {
  if (!(delta > 0)) throw contract_error("log_phi: delta must be positive");
  if (!interlaces_cont(y, x)) throw contract_error("log_phi: y must interlace x");
  if (delta == 1.0) return 0.0;
  const int M = static_cast<int>(y.size());
  // Coincident coordinates: every coalescing same-row pair forces two
  // coalescing cross pairs, so the net exponent sign is that of delta - 1.
  bool coincident = false;
  double acc = -M * std::lgamma(delta);
  for (int i = 0; i <= M && !coincident; ++i) {
    for (int j = 0; j < M; ++j) {
      const double d = std::fabs(x[i] - y[j]);
      if (d == 0.0) {
        coincident = true;
        break;
      }
      acc += (delta - 1.0) * std::log(d);
    }
  }
  for (int i = 0; i < M + 1 && !coincident; ++i) {
    for (int j = i + 1; j < M + 1; ++j) {
      const double d = x[i] - x[j];
      if (d == 0.0) {
        coincident = true;
        break;
      }
      acc += (1.0 - delta) * std::log(d);
    }
  }
  for (int i = 0; i < M && !coincident; ++i) {
    for (int j = i + 1; j < M; ++j) {
      const double d = y[i] - y[j];
      if (d == 0.0) {
        coincident = true;
        break;
      }
      acc += (1.0 - delta) * std::log(d);
    }
  }
  if (coincident) {
    return delta < 1.0 ? std::numeric_limits<double>::infinity()
                       : -std::numeric_limits<double>::infinity();
  }
  return acc;
}

double phi(const std::vector<double>& y, const std::vector<double>& x, double delta) {
  return std::exp(log_phi(y, x, delta));
}

double phi_base(const std::vector<double>& y, const std::vector<double>& x) {
  if (!interlaces_cont(y, x)) throw contract_error("phi_base: y must interlace x");
  const int M = static_cast<int>(y.size());
  double acc = 0.0;
  for (int i = 0; i <= M; ++i) {
    for (int j = 0; j < M; ++j) acc += std::log(std::fabs(x[i] - y[j]));
  }
  for (int i = 0; i < M + 1; ++i) {
    for (int j = i + 1; j < M + 1; ++j) acc -= std::log(x[i] - x[j]);
  }
  for (int i = 0; i < M; ++i) {
    for (int j = i + 1; j < M; ++j) acc -= std::log(y[i] - y[j]);
  }
  return std::exp(acc);
}

}  // namespace momcbe
