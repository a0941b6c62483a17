#pragma once
#include <array>
#include <cmath>
#include <cstdint>

#include "momcbe/errors.hpp"

namespace momcbe {

// Philox 4x32-10 block function. Counter-based: output depends only on
// (key, counter), so independent streams are just distinct counter prefixes.
inline std::array<uint32_t, 4> philox4x32(std::array<uint32_t, 4> ctr, std::array<uint32_t, 2> key) {
  constexpr uint32_t m0 = 0xD2511F53u, m1 = 0xCD9E8D57u;
  constexpr uint32_t w0 = 0x9E3779B9u, w1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    if (round > 0) {
      key[0] += w0;
      key[1] += w1;
    }
    const uint64_t p0 = static_cast<uint64_t>(m0) * ctr[0];
    const uint64_t p1 = static_cast<uint64_t>(m1) * ctr[2];
    const uint32_t hi0 = static_cast<uint32_t>(p0 >> 32), lo0 = static_cast<uint32_t>(p0);
    const uint32_t hi1 = static_cast<uint32_t>(p1 >> 32), lo1 = static_cast<uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
  }
  return ctr;
}

// One stream of the generator: key = seed, counter = (stream id, block index).
class philox_stream {
 public:
  philox_stream(uint64_t seed, uint64_t stream) : seed_(seed), stream_(stream) {}

  uint64_t next_u64() {
    if (have_ == 0) refill();
    --have_;
    return buffer_[have_];
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal; consumes exactly two uniforms per pair of calls.
  double next_normal() {
    if (normal_cached_) {
      normal_cached_ = false;
      return cached_normal_;
    }
    double u1 = next_unit();
    while (u1 <= 0.0) u1 = next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    cached_normal_ = r * std::sin(a);
    normal_cached_ = true;
    return r * std::cos(a);
  }

  uint64_t stream_id() const { return stream_; }

 private:
  void refill() {
    const std::array<uint32_t, 4> ctr = {
        static_cast<uint32_t>(stream_), static_cast<uint32_t>(stream_ >> 32),
        static_cast<uint32_t>(block_), static_cast<uint32_t>(block_ >> 32)};
    const std::array<uint32_t, 2> key = {static_cast<uint32_t>(seed_), static_cast<uint32_t>(seed_ >> 32)};
    const auto out = philox4x32(ctr, key);
    buffer_[0] = (static_cast<uint64_t>(out[0]) << 32) | out[1];
    buffer_[1] = (static_cast<uint64_t>(out[2]) << 32) | out[3];
    have_ = 2;
    ++block_;
  }

  uint64_t seed_, stream_;
  uint64_t block_ = 0;
  uint64_t buffer_[2] = {0, 0};
  int have_ = 0;
  bool normal_cached_ = false;
  double cached_normal_ = 0.0;
};

// Marsaglia-Tsang for alpha >= 1; alpha < 1 handled with the power boost
// G(alpha) = G(alpha + 1) * U^(1/alpha).
inline double sample_gamma(philox_stream& rng, double alpha) {
  if (!(alpha > 0.0)) throw contract_error("sample_gamma: alpha must be positive");
  if (alpha < 1.0) {
    const double boost = sample_gamma(rng, alpha + 1.0);
    double u = rng.next_unit();
    while (u <= 0.0) u = rng.next_unit();
    return boost * std::pow(u, 1.0 / alpha);
  }
  const double d = alpha - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = rng.next_normal();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = rng.next_unit();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (u > 0.0 && std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

inline double sample_beta(philox_stream& rng, double a, double b) {
  const double ga = sample_gamma(rng, a);
  const double gb = sample_gamma(rng, b);
  const double s = ga + gb;
  if (s <= 0.0) return 0.5;
  return ga / s;
}

}  // namespace momcbe
