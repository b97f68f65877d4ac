// Copyright voiceanon contributors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOICEANON_RNG_HPP
#define VOICEANON_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace voiceanon {

/// Seeded pseudo-random source used by every stochastic operation in the
/// toolkit. The full generation chain is pinned so that a (seed, call
/// sequence) pair reproduces the same values on every standard-conforming
/// platform:
///
///   engine      mt19937_64 seeded directly with the 64-bit seed
///               (initialisation sequence mandated by the C++ standard)
///   uniform01   (next_u64() >> 11) * 2^-53, giving [0, 1) with 53 bits
///   uniform     lo + uniform01() * (hi - lo), clamped below hi (half-open)
///   normal      Box-Muller on (u1, u2]: consumes two raw draws per pair,
///               caches the second variate
///   uniform_int rejection sampling on the top of the 64-bit range
///               (no modulo bias)
///
/// Gaussian variates go through std::log/cos/sin, so bit-exactness across
/// *different* libm builds is subject to their rounding; on any one
/// platform reruns are byte-identical.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on the half-open interval [lo, hi); returns lo when lo == hi.
  /// One raw draw is consumed regardless, so call sequences stay aligned
  /// across degenerate and non-degenerate ranges.
  double uniform(double lo, double hi);

  /// Standard normal variate (Box-Muller).
  double normal();

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  /// Uniform integer in [0, bound); bound must be nonzero.
  std::uint64_t uniform_int(std::uint64_t bound);

  /// First k positions of a Fisher-Yates shuffle of {0, ..., n-1}, in
  /// selection order. Requires k <= n.
  std::vector<std::size_t> sample_without_replacement(std::size_t n,
                                                      std::size_t k);

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

/// Stage-seed derivation: fnv1a64(label) xor'ed into the base seed, then
/// finalised with the splitmix64 mixer. Deterministic and documented so a
/// single global seed can drive independent pipeline stages.
std::uint64_t derive_seed(std::uint64_t base, std::string_view label);

/// Index variant for per-attempt / per-item streams.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace voiceanon

#endif  // VOICEANON_RNG_HPP
