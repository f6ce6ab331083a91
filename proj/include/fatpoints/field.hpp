#pragma once

#include <cstdint>

#include "fatpoints/errors.hpp"

namespace fatpoints {

// Arithmetic in Z/p for a runtime prime p < 2^62.  Residues travel as plain
// uint64_t in [0, p); the field object is just the modulus plus operations, so
// it is cheap to copy around and store in samplers and matrices.
class PrimeField {
 public:
  static constexpr std::uint64_t kDefaultPrime = 2147483647;  // 2^31 - 1

  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }

  std::uint64_t reduce(std::uint64_t a) const { return a % p_; }
  // Signed lift, for convenience when building small integer matrices.
  std::uint64_t reduce_signed(long long a) const;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(a) * b % p_);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  // Extended-Euclid inverse; throws ZeroInverse on 0.
  std::uint64_t inv(std::uint64_t a) const;
  std::uint64_t div(std::uint64_t a, std::uint64_t b) const {
    return mul(a, inv(b));
  }

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint64_t p_;
};

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

}  // namespace fatpoints
