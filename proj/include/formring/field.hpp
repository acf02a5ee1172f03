#pragma once

#include <cstdint>
#include <string>

#include "formring/errors.hpp"

namespace formring {

// Residue modulo the characteristic, always in [0, p).
using Residue = std::uint32_t;

constexpr bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

// Arithmetic in GF(p) for a prime p < 2^31.
class PrimeField {
 public:
  static constexpr std::uint32_t kDefaultCharacteristic = 32003;

  explicit PrimeField(std::uint64_t p = kDefaultCharacteristic) : p_(static_cast<std::uint32_t>(p)) {
    if (p >= (std::uint64_t{1} << 31)) throw DomainError(std::to_string(p) + " exceeds the supported characteristic range");
    if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  }

  std::uint32_t characteristic() const { return p_; }

  Residue add(Residue a, Residue b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Residue sub(Residue a, Residue b) const { return a >= b ? a - b : a + p_ - b; }
  Residue neg(Residue a) const { return a == 0 ? 0 : p_ - a; }
  Residue mul(Residue a, Residue b) const {
    return static_cast<Residue>(static_cast<std::uint64_t>(a) * b % p_);
  }
  // a - c*b
  Residue sub_mul(Residue a, Residue c, Residue b) const { return sub(a, mul(c, b)); }

  Residue pow(Residue a, std::uint64_t e) const {
    Residue r = 1 % p_;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  Residue inv(Residue a) const {
    if (a == 0) throw DomainError("division by zero in GF(" + std::to_string(p_) + ")");
    // extended Euclid on signed 64-bit
    std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<Residue>(t);
  }

  Residue from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Residue>(r);
  }

  // Symmetric representative, used for printing.
  std::int64_t to_signed(Residue a) const {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : static_cast<std::int64_t>(a);
  }

  friend bool operator==(const PrimeField&, const PrimeField&) = default;

 private:
  std::uint32_t p_;
};

}  // namespace formring
