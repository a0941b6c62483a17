#include "momcbe/arrays.hpp"

#include <algorithm>
#include <string>

#include "momcbe/errors.hpp"

namespace momcbe {

bool spec_valid(const array_spec& s) { return s.N >= 0 && s.k >= 1 && s.q >= 1; }

int chain_rows(const array_spec& s) { return 2 * s.k * s.q - 1; }

signature top_row(const array_spec& s) {
  const int kq = s.k * s.q;
  signature top(2 * kq, 0);
  std::fill(top.begin(), top.begin() + kq, s.N);
  return top;
}

std::optional<long> row_sum_target(const array_spec& s, int m) {
  if (m <= 0) return std::nullopt;
  const int period = 2 * s.q;
  if (m % period != 0) return std::nullopt;
  const long j = m / period;
  return j * static_cast<long>(s.N) * s.q;
}

long free_coordinate_count(const array_spec& s) {
  const long kq = static_cast<long>(s.k) * s.q;
  return kq * kq - (s.k - 1);
}

namespace {

void require_spec(const array_spec& s) {
  if (!spec_valid(s)) throw contract_error("array_spec: need N >= 0, k >= 1, q >= 1");
}

void require_budget(const array_spec& s, long max_free) {
  const long free_coords = free_coordinate_count(s);
  if (free_coords > max_free) {
    throw resource_error("array enumeration refused: " + std::to_string(free_coords) +
                         " free coordinates exceed cap " + std::to_string(max_free));
  }
}

bool row_in_box(const signature& row, int cap) {
  return row.empty() || (row.front() <= cap && row.back() >= 0);
}

bool sum_matches(const array_spec& s, int m, const signature& row) {
  const auto target = row_sum_target(s, m);
  return !target || sig_sum(row) == *target;
}

// All signatures of a given length with parts in [0, cap], descending
// lexicographic, optionally with a fixed sum.
uint64_t for_each_boxed_signature(int length, int cap, std::optional<long> sum_target,
                                  const std::function<void(const signature&)>& visit) {
  signature out(length);
  uint64_t count = 0;
  std::function<void(int, int, long)> descend = [&](int pos, int prev, long rest) {
    if (pos == length) {
      if (sum_target && rest != 0) return;
      ++count;
      visit(out);
      return;
    }
    const int slots_after = length - pos - 1;
    long vhi = prev, vlo = 0;
    if (sum_target) {
      vhi = std::min<long>(vhi, rest);
      // rest - v <= v * slots_after, so v >= rest / (slots_after + 1) rounded up.
      vlo = std::max<long>(vlo, (rest + slots_after) / (slots_after + 1));
    }
    for (long v = vhi; v >= vlo; --v) {
      out[pos] = static_cast<int>(v);
      descend(pos + 1, static_cast<int>(v), rest - v);
    }
  };
  descend(0, cap, sum_target ? *sum_target : 0);
  return count;
}

}  // namespace

bool valid_chain_array(const array_spec& s, const chain_array& a) {
  if (!spec_valid(s)) return false;
  const int rows = chain_rows(s);
  if (static_cast<int>(a.rows.size()) != rows) return false;
  const signature top = top_row(s);
  for (int i = 0; i < rows; ++i) {
    const signature& row = a.rows[i];
    if (static_cast<int>(row.size()) != i + 1) return false;
    if (!is_signature(row) || !row_in_box(row, s.N)) return false;
    if (!sum_matches(s, i + 1, row)) return false;
    const signature& above = (i + 1 < rows) ? a.rows[i + 1] : top;
    if (!interlaces(row, above)) return false;
  }
  return true;
}

bool valid_center_array(const array_spec& s, const center_array& a) {
  if (!spec_valid(s)) return false;
  const int kq = s.k * s.q;
  if (static_cast<int>(a.asc.size()) != kq) return false;
  if (static_cast<int>(a.desc.size()) != kq - 1) return false;
  for (int m = 1; m <= kq; ++m) {
    const signature& row = a.asc[m - 1];
    if (static_cast<int>(row.size()) != m) return false;
    if (!is_signature(row) || !row_in_box(row, s.N)) return false;
    if (!sum_matches(s, m, row)) return false;
    if (m < kq && !interlaces(row, a.asc[m])) return false;
  }
  for (int m = 1; m <= kq - 1; ++m) {
    const signature& row = a.desc[m - 1];
    if (static_cast<int>(row.size()) != m) return false;
    if (!is_signature(row) || !row_in_box(row, s.N)) return false;
    if (!sum_matches(s, m, row)) return false;
    const signature& above = (m == kq - 1) ? a.asc[kq - 1] : a.desc[m];
    if (!interlaces(row, above)) return false;
  }
  return true;
}

center_array fold_to_center(const array_spec& s, const chain_array& a) {
  require_spec(s);
  if (!valid_chain_array(s, a)) throw contract_error("fold_to_center: invalid chain array");
  const int kq = s.k * s.q;
  center_array out;
  out.asc.assign(a.rows.begin(), a.rows.begin() + kq);
  out.desc.resize(kq - 1);
  for (int m = 1; m <= kq - 1; ++m) {
    // Row 2kq - m keeps only its middle coordinates; the first and last
    // (kq - m) coordinates are pinned to N and 0 by interlacing with the top.
    const signature& source = a.rows[2 * kq - m - 1];
    signature& row = out.desc[m - 1];
    row.resize(m);
    for (int r = 0; r < m; ++r) row[r] = source[kq - m + r];
  }
  return out;
}

chain_array unfold_from_center(const array_spec& s, const center_array& a) {
  require_spec(s);
  if (!valid_center_array(s, a)) throw contract_error("unfold_from_center: invalid center array");
  const int kq = s.k * s.q;
  chain_array out;
  out.rows.resize(chain_rows(s));
  for (int i = 0; i < kq; ++i) out.rows[i] = a.asc[i];
  for (int chain_row = kq + 1; chain_row <= 2 * kq - 1; ++chain_row) {
    const int m = 2 * kq - chain_row;
    const int pinned = chain_row - kq;
    signature row;
    row.reserve(chain_row);
    row.insert(row.end(), pinned, s.N);
    row.insert(row.end(), a.desc[m - 1].begin(), a.desc[m - 1].end());
    row.insert(row.end(), pinned, 0);
    out.rows[chain_row - 1] = std::move(row);
  }
  return out;
}

uint64_t for_each_center_array(const array_spec& s, long max_free,
                               const std::function<void(const center_array&)>& visit) {
  require_spec(s);
  require_budget(s, max_free);
  const int kq = s.k * s.q;
  center_array arr;
  arr.asc.resize(kq);
  arr.desc.resize(kq - 1);
  uint64_t count = 0;

  std::function<void(int)> fill_desc = [&](int m) {
    if (m == 0) {
      ++count;
      visit(arr);
      return;
    }
    const signature& above = (m == kq - 1) ? arr.asc[kq - 1] : arr.desc[m];
    for_each_shrink(above, row_sum_target(s, m), [&](const signature& nu) {
      arr.desc[m - 1] = nu;
      fill_desc(m - 1);
    });
  };
  std::function<void(int)> fill_asc = [&](int m) {
    if (m == 0) {
      fill_desc(kq - 1);
      return;
    }
    for_each_shrink(arr.asc[m], row_sum_target(s, m), [&](const signature& nu) {
      arr.asc[m - 1] = nu;
      fill_asc(m - 1);
    });
  };
  for_each_boxed_signature(kq, s.N, row_sum_target(s, kq), [&](const signature& center) {
    arr.asc[kq - 1] = center;
    fill_asc(kq - 1);
  });
  return count;
}

uint64_t for_each_chain_array(const array_spec& s, long max_free,
                              const std::function<void(const chain_array&)>& visit) {
  require_spec(s);
  require_budget(s, max_free);
  const int rows = chain_rows(s);
  const signature top = top_row(s);
  chain_array arr;
  arr.rows.resize(rows);
  uint64_t count = 0;
  std::function<void(int)> fill = [&](int i) {
    if (i < 0) {
      ++count;
      visit(arr);
      return;
    }
    const signature& above = (i == rows - 1) ? top : arr.rows[i + 1];
    for_each_shrink(above, row_sum_target(s, i + 1), [&](const signature& nu) {
      arr.rows[i] = nu;
      fill(i - 1);
    });
  };
  fill(rows - 1);
  return count;
}

}  // namespace momcbe
