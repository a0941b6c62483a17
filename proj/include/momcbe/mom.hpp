#pragma once
#include <cstdint>
#include <map>

#include "momcbe/arrays.hpp"
#include "momcbe/rational.hpp"

namespace momcbe {

struct dp_limits {
  uint64_t max_layer_states = 2'000'000;
  int workers = 1;
};

struct mom_stats {
  uint64_t max_layer_states = 0;
  uint64_t center_states = 0;
  uint64_t transfer_edges = 0;
};

// Exact moment of moments at parameter delta = 2 / beta. Row-by-row transfer
// over the center-folded arrays: an ascending pass with plain branching
// weights, a descending pass with cap-extended ones, joined at the center row.
// Worker partitioning never changes the result (rational addition is exact).
rational mom_exact(const array_spec& spec, const rational& delta, const dp_limits& limits = {},
                   mom_stats* stats = nullptr);

// Same quantity by direct enumeration of full chains with top row fixed;
// independent route kept as an oracle. Refuses specs whose free coordinate
// count exceeds max_free.
rational mom_exact_chain(const array_spec& spec, const rational& delta, long max_free = 12);

// Floating-point oracle: tensor trapezoid rule over the k angles with
// 2Nq + 1 points per axis, which integrates the trigonometric-polynomial
// integrand exactly up to rounding.
double mom_quadrature(const array_spec& spec, const rational& delta);

}  // namespace momcbe
