#pragma once

#include <cstdint>
#include <random>

#include "fatpoints/field.hpp"

namespace fatpoints {

// Deterministic random source.  Only raw engine output is consumed (std
// distributions are implementation-defined), so a (seed, trial) pair yields
// the same stream on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Independent stream for trial k of a seeded run.
  static Rng for_trial(std::uint64_t seed, std::uint64_t trial) {
    return Rng(mix(seed, trial));
  }

  std::uint64_t next() { return engine_(); }

  // Unbiased uniform draw from [0, n).
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t limit = ~0ull - ~0ull % n;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % n;
  }

  std::uint64_t element(const PrimeField& f) { return below(f.modulus()); }
  std::uint64_t nonzero(const PrimeField& f) {
    return 1 + below(f.modulus() - 1);
  }

  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    // splitmix64 finalizer over the pair
    std::uint64_t z = a + 0x9e3779b97f4a7c15ull * (b + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fatpoints
