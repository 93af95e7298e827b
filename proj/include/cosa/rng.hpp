#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace cosa {

/**
 * Seedable, splittable generator.
 *
 * Stream derivation: the engine (std::mt19937_64) for stream s of seed x is
 * seeded with splitmix64(splitmix64(x) ^ splitmix64(s + 0x9E3779B97F4A7C15)).
 * Normal and bounded-integer draws are implemented here rather than through
 * <random> distributions, whose output is not specified by the standard, so
 * sequences are identical across standard libraries.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal (Box-Muller, both variates used).
  double normal();
  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);

  /// Uniformly random permutation of 0..n-1 (Fisher-Yates).
  std::vector<std::size_t> permutation(std::size_t n);
  /// m distinct indices drawn uniformly from 0..n-1, in draw order.
  std::vector<std::size_t> sample(std::size_t n, std::size_t m);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace cosa
