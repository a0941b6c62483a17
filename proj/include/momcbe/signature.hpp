#pragma once
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace momcbe {

// Weakly decreasing tuple of nonnegative integers; the empty tuple is allowed.
using signature = std::vector<int>;

bool is_signature(const signature& s);

long sig_sum(const signature& s);

// mu has one part fewer than la and la_1 >= mu_1 >= la_2 >= ... >= mu_M >= la_{M+1}.
bool interlaces(const signature& mu, const signature& la);

// (cap, s_1, ..., s_M, 0). If mu ≺ la and all parts are <= cap then la ≺ extend(mu, cap).
signature extend(const signature& s, int cap);

// All la with mu ≺ la and parts <= cap, in descending lexicographic order,
// optionally restricted to sig_sum(la) == *sum_target. Returns the visit count.
uint64_t for_each_extension(const signature& mu, int cap, std::optional<long> sum_target,
                            const std::function<void(const signature&)>& visit);

// All nu with nu ≺ la, in descending lexicographic order, optionally restricted
// to sig_sum(nu) == *sum_target. Returns the visit count.
uint64_t for_each_shrink(const signature& la, std::optional<long> sum_target,
                         const std::function<void(const signature&)>& visit);

}  // namespace momcbe
