#include "nbtower/prime_field.hpp"

#include <string>

namespace nbtower {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ZeroInverse: return "ZeroInverse";
    case ErrorCode::CtxMismatch: return "CtxMismatch";
    case ErrorCode::BadStep: return "BadStep";
    case ErrorCode::NotInPrimeField: return "NotInPrimeField";
    case ErrorCode::NotInSubfield: return "NotInSubfield";
    case ErrorCode::ZeroTrace: return "ZeroTrace";
    case ErrorCode::Reducible: return "Reducible";
    case ErrorCode::EpsilonNotNormal: return "EpsilonNotNormal";
    case ErrorCode::ZeroB: return "ZeroB";
    case ErrorCode::NormalityFailure: return "NormalityFailure";
    case ErrorCode::ScaleExceeded: return "ScaleExceeded";
    case ErrorCode::NotDividing: return "NotDividing";
    case ErrorCode::NoSuchRoot: return "NoSuchRoot";
    case ErrorCode::BadB: return "BadB";
    case ErrorCode::ConstructionFailure: return "ConstructionFailure";
    case ErrorCode::BadInput: return "BadInput";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

PrimeModulus::PrimeModulus(std::uint32_t p) : p_(p) {
  if (p >= kLimit || !is_prime(p))
    throw Error(ErrorCode::NotPrime, "p must be prime and below 65536, got " + std::to_string(p));
}

std::uint32_t PrimeModulus::pow(std::uint32_t a, std::uint64_t e) const noexcept {
  std::uint32_t result = 1 % p_;
  a %= p_;
  while (e) {
    if (e & 1) result = mul(result, a);
    a = mul(a, a);
    e >>= 1;
  }
  return result;
}

std::uint32_t PrimeModulus::inv(std::uint32_t a) const {
  a %= p_;
  if (a == 0) throw Error(ErrorCode::ZeroInverse, "zero has no inverse modulo " + std::to_string(p_));
  // extended Euclid on (a, p)
  std::int64_t r0 = p_, r1 = a, t0 = 0, t1 = 1;
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    std::int64_t t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  return from_int(t0);
}

std::uint32_t PrimeModulus::from_int(std::int64_t v) const noexcept {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<std::uint32_t>(r);
}

FpScalar fp_inv(const FpScalar& a) { return {a.modulus(), a.modulus().inv(a.value())}; }

}  // namespace nbtower
