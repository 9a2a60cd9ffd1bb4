#pragma once

#include <cstdint>
#include <utility>

namespace trisim {

/// Deterministic 64-bit generator (SplitMix64, Steele/Lea/Vigna).
///
/// The algorithm is fixed by constant specification so every
/// implementation, in any language, reproduces the identical stream:
///
///   state_{i+1} = state_i + 0x9E3779B97F4A7C15
///   z = state_{i+1}
///   z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
///   z = (z ^ (z >> 27)) * 0x94D049BB133111EB
///   output_i = z ^ (z >> 31)
///
/// Doubles in [0,1) take the top 53 bits: (output >> 11) * 2^-53.
///
/// The i-th output depends only on (seed, i), so the stream is
/// random-access: at(seed, i) equals the i-th sequential draw. Parallel
/// consumers exploit this without sharing generator state.
class Prng {
public:
  explicit Prng(std::uint64_t seed = 0) : state_(seed), seed_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  /// Next double in [0,1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Unbiased-enough integer in [0, n) via 128-bit multiply-shift
  /// (Lemire). n must be > 0.
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  /// i-th output of the stream seeded with `seed` (0-based), without
  /// advancing any state.
  static std::uint64_t at(std::uint64_t seed, std::uint64_t i) {
    return mix(seed + (i + 1) * 0x9E3779B97F4A7C15ULL);
  }

  static double at_double(std::uint64_t seed, std::uint64_t i) {
    return static_cast<double>(at(seed, i) >> 11) * 0x1.0p-53;
  }

  std::uint64_t seed() const { return seed_; }

private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
  std::uint64_t seed_;
};

/// Functional form: value plus successor generator, inputs untouched.
inline std::pair<double, Prng> prng_next(Prng p) {
  double v = p.next_double();
  return {v, p};
}

}  // namespace trisim
