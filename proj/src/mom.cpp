#include "momcbe/mom.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <numbers>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "momcbe/errors.hpp"
#include "momcbe/jack.hpp"
#include "momcbe/weights.hpp"

namespace momcbe {

namespace {

using layer = std::map<signature, rational>;

void require_params(const array_spec& spec, const rational& delta) {
  if (!spec_valid(spec)) throw contract_error("mom: need N >= 0, k >= 1, q >= 1");
  if (delta <= 0) throw contract_error("mom: delta must be positive");
}

// (N^pin, row..., 0^pin): the chain row a folded row stands for.
signature embed(const signature& row, int pin, int N) {
  signature out;
  out.reserve(row.size() + 2 * static_cast<size_t>(pin));
  out.insert(out.end(), pin, N);
  out.insert(out.end(), row.begin(), row.end());
  out.insert(out.end(), pin, 0);
  return out;
}

// One transfer step: rows one part longer, each reached value accumulated
// over its extensions. Worker partitioning is round-robin over source rows
// and merged in worker order; rational sums make the result independent of
// the worker count.
layer advance(const layer& cur, const array_spec& spec, int next_level,
              const std::function<rational(const signature&, const signature&)>& edge_weight,
              const dp_limits& limits, uint64_t& edges) {
  const auto target = row_sum_target(spec, next_level);
  const int workers = std::max(1, limits.workers);

  std::vector<const std::pair<const signature, rational>*> sources;
  sources.reserve(cur.size());
  for (const auto& entry : cur) sources.push_back(&entry);

  std::vector<layer> parts(workers);
  std::vector<uint64_t> part_edges(workers, 0);
  std::vector<std::exception_ptr> failures(workers);

  auto run = [&](int w) {
    try {
      for (size_t i = w; i < sources.size(); i += workers) {
        const signature& mu = sources[i]->first;
        const rational& acc = sources[i]->second;
        for_each_extension(mu, spec.N, target, [&](const signature& la) {
          parts[w][la] += acc * edge_weight(mu, la);
          ++part_edges[w];
        });
        if (parts[w].size() > limits.max_layer_states) {
          throw resource_error("transfer layer exceeds max_layer_states = " +
                               std::to_string(limits.max_layer_states));
        }
      }
    } catch (...) {
      failures[w] = std::current_exception();
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
  for (int w = 0; w < workers; ++w) {
    if (failures[w]) std::rethrow_exception(failures[w]);
  }

  layer next = std::move(parts[0]);
  for (int w = 1; w < workers; ++w) {
    for (const auto& [row, val] : parts[w]) next[row] += val;
  }
  for (int w = 0; w < workers; ++w) edges += part_edges[w];
  if (next.size() > limits.max_layer_states) {
    throw resource_error("transfer layer exceeds max_layer_states = " +
                         std::to_string(limits.max_layer_states));
  }
  return next;
}

}  // namespace

rational mom_exact(const array_spec& spec, const rational& delta, const dp_limits& limits,
                   mom_stats* stats) {
  require_params(spec, delta);
  const int kq = spec.k * spec.q;
  uint64_t edges = 0;
  uint64_t peak = 1;

  // Ascending pass: accumulated branching weight of the lower chain.
  layer asc{{signature{}, rational(1)}};
  for (int level = 1; level <= kq; ++level) {
    asc = advance(
        asc, spec, level,
        [&](const signature& mu, const signature& la) { return psi(mu, la, delta); }, limits,
        edges);
    peak = std::max<uint64_t>(peak, asc.size());
  }

  // Descending pass: same moves on folded rows, weights taken between the
  // chain rows they stand for (pinned N and 0 coordinates restored).
  layer desc{{signature{}, rational(1)}};
  for (int level = 1; level <= kq; ++level) {
    const int pin = kq - level;
    desc = advance(
        desc, spec, level,
        [&](const signature& nu, const signature& la) {
          return psi(embed(la, pin, spec.N), embed(nu, pin + 1, spec.N), delta);
        },
        limits, edges);
    peak = std::max<uint64_t>(peak, desc.size());
  }

  rational total = 0;
  for (const auto& [center, weight] : asc) {
    auto it = desc.find(center);
    if (it != desc.end()) total += weight * it->second;
  }
  if (stats) {
    stats->max_layer_states = peak;
    stats->center_states = asc.size();
    stats->transfer_edges = edges;
  }
  return total;
}

rational mom_exact_chain(const array_spec& spec, const rational& delta, long max_free) {
  require_params(spec, delta);
  const signature top = top_row(spec);
  const int rows = chain_rows(spec);
  rational total = 0;
  for_each_chain_array(spec, max_free, [&](const chain_array& a) {
    rational w = 1;
    for (int i = 0; i < rows; ++i) {
      const signature& above = (i + 1 < rows) ? a.rows[i + 1] : top;
      w *= psi(a.rows[i], above, delta);
    }
    total += w;
  });
  return total;
}

double mom_quadrature(const array_spec& spec, const rational& delta) {
  require_params(spec, delta);
  // Per-angle integrands are trigonometric polynomials of degree N*q, so the
  // (2Nq + 1)-point periodic trapezoid rule is exact in every axis.
  const int points = 2 * spec.N * spec.q + 1;
  const double step = 2.0 * std::numbers::pi_v<double> / points;

  std::vector<int> grid(spec.k, 0);
  repeated_point_spec rp{spec.N, spec.k, spec.q, std::vector<double>(spec.k, 0.0)};
  double sum = 0.0;
  uint64_t cells = 0;
  bool done = false;
  while (!done) {
    for (int j = 0; j < spec.k; ++j) rp.angles[j] = step * grid[j];
    sum += matsumoto_expectation(rp, delta);
    ++cells;
    done = true;
    for (int j = 0; j < spec.k; ++j) {
      if (++grid[j] < points) {
        done = false;
        break;
      }
      grid[j] = 0;
    }
  }
  return sum / static_cast<double>(cells);
}

}  // namespace momcbe
