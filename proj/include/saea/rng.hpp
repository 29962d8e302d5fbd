#pragma once

#include <cstdint>

namespace saea {

// Seed-derivation contract (reproducible across implementations):
// SplitMix64 finalizer with the constants below. mix64 is bijective on
// 64-bit words, so distinct inputs always yield distinct seeds.
inline constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Seed of trial i in a batch: the (i+1)-th output of the SplitMix64 sequence
// started at base_seed.
inline constexpr std::uint64_t trial_seed(std::uint64_t base_seed,
                                          std::uint64_t trial_index) {
  return mix64(base_seed + (trial_index + 1) * kGoldenGamma);
}

// Named sub-stream of a run seed. Init, mutation and selection draws come
// from separate streams so consumers cannot perturb each other's sequences.
// The salt (fractional bits of sqrt 2) keeps sub-stream seeds disjoint from
// the trial_seed sequence.
inline constexpr std::uint64_t kStreamSalt = 0x6A09E667F3BCC909ULL;

inline constexpr std::uint64_t stream_seed(std::uint64_t seed,
                                           std::uint64_t tag) {
  return mix64((seed ^ kStreamSalt) + (tag + 1) * kGoldenGamma);
}

// xoshiro256++ behind a fixed seeding scheme: identical seed gives an
// identical draw sequence on every platform.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) {
      sm += kGoldenGamma;
      word = mix64(sm);
    }
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform on [0,1) with 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform on (0,1]; safe as a log() argument.
  double next_double_pos() { return 1.0 - next_double(); }

  bool next_bool(double p) { return next_double() < p; }

  /// Unbiased uniform integer in [0, bound), bound >= 1.
  std::uint64_t next_below(std::uint64_t bound) {
    // Lemire multiply-shift with rejection.
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace saea
