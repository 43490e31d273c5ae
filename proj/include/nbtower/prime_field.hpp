#pragma once

#include <cstdint>
#include <compare>

#include "nbtower/errors.hpp"

namespace nbtower {

bool is_prime(std::uint64_t n);

/// Residue arithmetic modulo a prime p < 2^16, so a product of two residues
/// always fits in 32 bits.
class PrimeModulus {
 public:
  static constexpr std::uint32_t kLimit = 1u << 16;

  explicit PrimeModulus(std::uint32_t p);

  std::uint32_t value() const noexcept { return p_; }

  std::uint32_t reduce(std::uint64_t x) const noexcept { return static_cast<std::uint32_t>(x % p_); }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept { return (a * b) % p_; }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;
  /// Throws ZeroInverse for a == 0.
  std::uint32_t inv(std::uint32_t a) const;
  /// Maps a signed integer onto its residue.
  std::uint32_t from_int(std::int64_t v) const noexcept;

  friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

 private:
  std::uint32_t p_;
};

class FpScalar {
 public:
  FpScalar(PrimeModulus modulus, std::int64_t v) : modulus_(modulus), value_(modulus.from_int(v)) {}

  std::uint32_t value() const noexcept { return value_; }
  const PrimeModulus& modulus() const noexcept { return modulus_; }
  bool is_zero() const noexcept { return value_ == 0; }

  FpScalar operator+(const FpScalar& o) const { return {modulus_, modulus_.add(value_, o.value_)}; }
  FpScalar operator-(const FpScalar& o) const { return {modulus_, modulus_.sub(value_, o.value_)}; }
  FpScalar operator*(const FpScalar& o) const { return {modulus_, modulus_.mul(value_, o.value_)}; }
  FpScalar operator-() const { return {modulus_, modulus_.neg(value_)}; }

  friend bool operator==(const FpScalar& a, const FpScalar& b) {
    return a.modulus_ == b.modulus_ && a.value_ == b.value_;
  }

 private:
  PrimeModulus modulus_;
  std::uint32_t value_;
};

FpScalar fp_inv(const FpScalar& a);

}  // namespace nbtower
