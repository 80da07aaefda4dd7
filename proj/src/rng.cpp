#include "firmcas/rng.h"

namespace firmcas {

namespace {

// splitmix64 finalizer; a bijection on 64-bit words.
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::size_t Rng::below(std::size_t bound) {
  const std::uint64_t b = bound;
  // Reject the low 2^64 mod b values so every residue is equally likely.
  const std::uint64_t threshold = (0 - b) % b;
  for (;;) {
    const std::uint64_t x = engine_();
    if (x >= threshold) return static_cast<std::size_t>(x % b);
  }
}

std::uint64_t seed_replicate(std::uint64_t master_seed, std::uint64_t replicate_index) {
  return mix64(mix64(master_seed) + replicate_index);
}

}  // namespace firmcas
