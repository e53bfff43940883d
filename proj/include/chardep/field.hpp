#pragma once

#include <cstdint>
#include <string>

#include "errors.hpp"

namespace chardep {

using Residue = std::uint32_t;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Arithmetic in GF(p). Primality is checked once, at construction.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (!is_prime(p)) throw NotPrime(std::to_string(p) + " is not prime");
  }

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t characteristic() const noexcept { return p_; }

  Residue reduce(std::int64_t x) const noexcept {
    auto r = x % static_cast<std::int64_t>(p_);
    return static_cast<Residue>(r < 0 ? r + p_ : r);
  }
  Residue add(Residue a, Residue b) const noexcept {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<Residue>(s >= p_ ? s - p_ : s);
  }
  Residue sub(Residue a, Residue b) const noexcept {
    return a >= b ? a - b : static_cast<Residue>(std::uint64_t{a} + p_ - b);
  }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>(std::uint64_t{a} * b % p_);
  }

  // Extended Euclid. inv(0) is undefined; callers never ask for it.
  Residue inv(Residue a) const noexcept {
    std::int64_t r0 = p_, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
      std::int64_t q = r0 / r1;
      std::int64_t tmp = r0 - q * r1;
      r0 = r1;
      r1 = tmp;
      tmp = s0 - q * s1;
      s0 = s1;
      s1 = tmp;
    }
    return reduce(s0);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

}  // namespace chardep
