#pragma once
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "momcbe/signature.hpp"

namespace momcbe {

// Shape parameters for the interlacing-array models with parts in [0, N].
struct array_spec {
  int N = 1;
  int k = 1;
  int q = 1;
};

bool spec_valid(const array_spec& s);

// Number of chain rows below the fixed top row: lengths 1, 2, ..., 2kq - 1.
int chain_rows(const array_spec& s);

// Fixed top row (N repeated kq times, then 0 repeated kq times).
signature top_row(const array_spec& s);

// Prescribed sum for chain row m (1-based, either side), if any: rows at
// multiples of 2q carry sum N * q * (m / (2q)).
std::optional<long> row_sum_target(const array_spec& s, int m);

// Free coordinates after the top row is fixed and row sums are imposed.
long free_coordinate_count(const array_spec& s);

// Full chain la^(1) ≺ la^(2) ≺ ... ≺ la^(2kq) with the top row fixed.
// rows[i] has length i + 1; rows.size() == 2kq - 1 (the fixed top is implicit).
struct chain_array {
  std::vector<signature> rows;
};

// Center-folded form: two chains of lengths 1..kq meeting in a shared center
// row. asc.back() is the center; desc holds rows of lengths 1..kq - 1.
struct center_array {
  std::vector<signature> asc;
  std::vector<signature> desc;
};

bool valid_chain_array(const array_spec& s, const chain_array& a);
bool valid_center_array(const array_spec& s, const center_array& a);

// Folds the rows above the center onto a second descending chain by dropping
// their interlacing-forced N and 0 coordinates. Bijective on valid arrays.
center_array fold_to_center(const array_spec& s, const chain_array& a);
chain_array unfold_from_center(const array_spec& s, const center_array& a);

// Enumerates valid arrays in a fixed deterministic order. Throws resource_error
// when free_coordinate_count exceeds max_free. Returns the count.
uint64_t for_each_center_array(const array_spec& s, long max_free,
                               const std::function<void(const center_array&)>& visit);
uint64_t for_each_chain_array(const array_spec& s, long max_free,
                              const std::function<void(const chain_array&)>& visit);

}  // namespace momcbe
