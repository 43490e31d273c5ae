#pragma once

#include <cstdint>

#include "nbtower/config.hpp"
#include "nbtower/field.hpp"
#include "nbtower/oracle.hpp"
#include "nbtower/structure_tables.hpp"

namespace nbtower {

/// p^l - 1 = m * q^r with gcd(m, q) = 1, and 1 <= s <= r.
struct KummerParams {
  std::uint32_t p = 0;
  std::uint32_t q = 0;
  std::uint32_t l = 0;
  std::uint32_t r = 0;
  std::uint64_t m = 0;
  std::uint32_t s = 0;

  std::uint64_t q_pow(std::uint32_t e) const;
  /// q^s, the relative degree.
  std::uint64_t degree() const { return q_pow(s); }
  /// p^l.
  std::uint64_t base_size() const;

  friend bool operator==(const KummerParams&, const KummerParams&) = default;
};

/// Throws NotPrime, BadInput (q == p, s out of range, p^l too large) and
/// NotDividing when q does not divide p^l - 1.
KummerParams kummer_params(std::uint32_t p, std::uint32_t q, std::uint32_t l, std::uint32_t s = 1);

/// F_{p^l}: the prime field for l = 1, otherwise the extension by the
/// canonically smallest monic irreducible polynomial of degree l.
CtxPtr kummer_base_field(std::uint32_t p, std::uint32_t l);

/// Canonically smallest element of multiplicative order exactly q^r.
/// Throws NoSuchRoot.
FieldElement find_xi(const CtxPtr& base, std::uint32_t q, std::uint32_t r);

struct KummerLevel {
  KummerParams params;
  CtxPtr ctx;  // K[x]/(x^(q^s) - xi)
  FieldElement xi;
  FieldElement zeta;
  FieldElement b;
  FieldElement alpha;  // adjoined root, in E
  FieldElement gamma;  // (alpha - b)^-1, in E
};

/// Throws BadB (b = 0 or b^(q^s) = xi), BadInput, ConstructionFailure when a
/// Frobenius identity or the oracle irreducibility check fails.
KummerLevel kummer_extend(const CtxPtr& base, const KummerParams& params, const FieldElement& xi,
                          const FieldElement& b);

/// Rows gamma^(1+p^(il)) = c_i gamma - c_i zeta^i gamma_i with
/// c_i = (zeta^i - 1)^-1 b^-1, and gamma^2 = [S - sum c_i] gamma + sum c_i zeta^i gamma_i.
MultTable kummer_table(const KummerLevel& level);

/// Closed form -q^s b^(q^s - 1) (b^(q^s) - xi)^-1, an element of K.
FieldElement conj_sum(const KummerLevel& level);

/// Rank check: the q^s conjugates of gamma span E over K, and so does
/// {alpha^-j : 0 <= j < q^s} together with them.
bool kummer_normality(const KummerLevel& level);

/// alpha^(p^(il)) = zeta^i alpha, beta^(p^(il)) - zeta^i beta = (zeta^i - 1) b,
/// zeta order, and the conjugate-sum closed form.
VerificationReport verify_kummer_level(const KummerLevel& level);

}  // namespace nbtower
