/**
 * @file rng.hpp
 * @brief splitmix64, the seeded generator behind every random fixture.
 *
 * Update: state += 0x9E3779B97F4A7C15; z = state;
 *         z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9;
 *         z = (z ^ (z >> 27)) * 0x94D049BB133111EB;
 *         return z ^ (z >> 31).
 * Uniform doubles use the top 53 bits: (z >> 11) * 2^-53.
 */
#pragma once

#include <cstdint>

namespace lcmin {

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// [0, 1)
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// [lo, hi], inclusive.
  int uniform_int(int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next() % span);
  }

  // UniformRandomBitGenerator
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }
  std::uint64_t operator()() { return next(); }

 private:
  std::uint64_t state_;
};

}  // namespace lcmin
