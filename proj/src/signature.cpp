#include "momcbe/signature.hpp"

#include <algorithm>

#include "momcbe/errors.hpp"

namespace momcbe {

bool is_signature(const signature& s) {
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] < 0) return false;
    if (i > 0 && s[i - 1] < s[i]) return false;
  }
  return true;
}

long sig_sum(const signature& s) {
  long total = 0;
  for (int part : s) total += part;
  return total;
}

bool interlaces(const signature& mu, const signature& la) {
  if (mu.size() + 1 != la.size()) return false;
  if (!is_signature(la) || !is_signature(mu)) return false;
  for (size_t i = 0; i < mu.size(); ++i) {
    if (!(la[i] >= mu[i] && mu[i] >= la[i + 1])) return false;
  }
  return true;
}

signature extend(const signature& s, int cap) {
  if (!is_signature(s)) throw contract_error("extend: not a signature");
  if (!s.empty() && s.front() > cap) throw contract_error("extend: part exceeds cap");
  signature out;
  out.reserve(s.size() + 2);
  out.push_back(cap);
  out.insert(out.end(), s.begin(), s.end());
  out.push_back(0);
  return out;
}

namespace {

// Emits all weakly decreasing fillings of coordinate boxes [lo_i, hi_i] in
// descending lexicographic order. Boxes coming from interlacing already force
// the weak decrease; prefix-sum bounds prune when a row sum is prescribed.
uint64_t fill_boxes(const std::vector<int>& lo, const std::vector<int>& hi,
                    std::optional<long> target,
                    const std::function<void(const signature&)>& visit) {
  const size_t n = lo.size();
  std::vector<long> suffix_min(n + 1, 0), suffix_max(n + 1, 0);
  for (size_t i = n; i-- > 0;) {
    suffix_min[i] = suffix_min[i + 1] + lo[i];
    suffix_max[i] = suffix_max[i + 1] + hi[i];
  }
  signature out(n);
  uint64_t count = 0;
  std::function<void(size_t, long)> descend = [&](size_t pos, long rest) {
    if (pos == n) {
      if (target && rest != 0) return;
      ++count;
      visit(out);
      return;
    }
    long vhi = hi[pos], vlo = lo[pos];
    if (target) {
      vhi = std::min<long>(vhi, rest - suffix_min[pos + 1]);
      vlo = std::max<long>(vlo, rest - suffix_max[pos + 1]);
    }
    for (long v = vhi; v >= vlo; --v) {
      out[pos] = static_cast<int>(v);
      descend(pos + 1, rest - v);
    }
  };
  descend(0, target ? *target : 0);
  return count;
}

}  // namespace

uint64_t for_each_extension(const signature& mu, int cap, std::optional<long> sum_target,
                            const std::function<void(const signature&)>& visit) {
  if (!is_signature(mu)) throw contract_error("for_each_extension: not a signature");
  if (cap < 0) throw contract_error("for_each_extension: negative cap");
  const size_t m = mu.size();
  std::vector<int> lo(m + 1), hi(m + 1);
  for (size_t i = 0; i <= m; ++i) {
    hi[i] = (i == 0) ? cap : mu[i - 1];
    lo[i] = (i == m) ? 0 : mu[i];
  }
  return fill_boxes(lo, hi, sum_target, visit);
}

uint64_t for_each_shrink(const signature& la, std::optional<long> sum_target,
                         const std::function<void(const signature&)>& visit) {
  if (!is_signature(la)) throw contract_error("for_each_shrink: not a signature");
  if (la.empty()) throw contract_error("for_each_shrink: empty signature");
  const size_t m = la.size() - 1;
  std::vector<int> lo(m), hi(m);
  for (size_t i = 0; i < m; ++i) {
    lo[i] = la[i + 1];
    hi[i] = la[i];
  }
  return fill_boxes(lo, hi, sum_target, visit);
}

}  // namespace momcbe
