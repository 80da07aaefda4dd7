#pragma once

#include <cstddef>
#include <cstdint>
#include <iterator>
#include <random>
#include <utility>

namespace firmcas {

/// The single random stream of one replicate.
///
/// Distribution code is written out here instead of using the <random>
/// distributions, whose output is implementation-defined, so that a seed
/// reproduces the same trajectory with any standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::size_t below(std::size_t bound);

  template <class RandomIt>
  void shuffle(RandomIt first, RandomIt last) {
    const auto count = static_cast<std::size_t>(std::distance(first, last));
    for (std::size_t i = count; i > 1; --i) {
      const std::size_t j = below(i);
      using std::swap;
      swap(first[i - 1], first[j]);
    }
  }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Stream seed for replicate `replicate_index` of a batch. Injective in the
/// index for a fixed master seed.
std::uint64_t seed_replicate(std::uint64_t master_seed, std::uint64_t replicate_index);

inline Rng replicate_rng(std::uint64_t master_seed, std::uint64_t replicate_index) {
  return Rng(seed_replicate(master_seed, replicate_index));
}

}  // namespace firmcas
