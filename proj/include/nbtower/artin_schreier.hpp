#pragma once

#include <cstddef>
#include <optional>

#include "nbtower/field.hpp"

namespace nbtower {

/// One Artin-Schreier step E = K[beta]/(beta^p - beta - alpha).
///
/// `delta_inv = beta^-1 - b` is the normal generator of E (over K and over
/// Z_p); `delta` is its inverse and becomes the next level's alpha.
struct ASLevel {
  CtxPtr ctx;
  FieldElement alpha;  // in K
  FpScalar h;          // absolute trace of alpha, nonzero
  FieldElement beta;
  FieldElement gamma;  // beta^-1
  FieldElement delta_inv;
  FieldElement delta;
  FpScalar b;

  /// n = [K : Z_p]; relative conjugates are x^(p^(i*n)).
  std::size_t step() const { return ctx->base_abs_degree(); }
  std::uint32_t p() const { return ctx->prime().value(); }
};

/// x^p - x - alpha is irreducible over alpha's field iff Tr(alpha) != 0.
bool as_irreducible(const FieldElement& alpha);

/// h = sum_{i<n} alpha^(p^i). Throws NotInPrimeField or ZeroTrace.
FpScalar compute_h(const FieldElement& alpha);

/// Context for K[x]/(x^p - x - alpha). Throws Reducible.
CtxPtr as_extend(const FieldElement& alpha);

/// m*d + sum_j delta^(p^(j*step)) != 0, with m = abs_degree/step. For a
/// normal delta this guarantees delta + d is normal as well. `d` must be
/// fixed by the p^step-power map. Throws BadStep, NotInSubfield.
bool shift_preserves_normality(const FieldElement& delta, const FieldElement& d, std::size_t step);

/// beta^(p-1) - c, or epsilon*(beta^(p-1) - c) when epsilon is given. With
/// epsilon, c must lie in Z_p and epsilon must be normal in K over Z_p.
/// Throws BadInput (not an Artin-Schreier context), NotInPrimeField,
/// EpsilonNotNormal.
FieldElement beta_power_element(const CtxPtr& ctx, const FieldElement& c,
                                const std::optional<FieldElement>& epsilon = std::nullopt);

struct DeltaPair {
  FieldElement delta_inv;
  FieldElement delta;
};

/// delta_inv = beta^-1 - b and its inverse, with every post-condition
/// (normality over K and Z_p, nonzero trace of delta, conjugate-sum closed
/// form) checked. Throws ZeroB, NormalityFailure.
DeltaPair next_delta(const CtxPtr& level_ctx, const FpScalar& b);

/// Builds the full level record for alpha over its field.
ASLevel make_as_level(const FieldElement& alpha, const FpScalar& b);

/// Closed form b^-2 alpha^-1 for sum_{i<p} delta^(p^(i*n)), embedded in E.
FieldElement delta_conjugate_sum_closed_form(const ASLevel& level);

/// True when the relative conjugates of `a` have full rank over the base.
bool is_normal_over_base(const FieldElement& a);

/// True when the abs_degree absolute conjugates of `a` have full rank over Z_p.
bool is_normal_over_prime(const FieldElement& a);

}  // namespace nbtower
