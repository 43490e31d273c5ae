#include "nbtower/artin_schreier.hpp"

#include "nbtower/linalg.hpp"

namespace nbtower {

namespace {

const ArtinSchreierKind& as_kind(const CtxPtr& ctx) {
  const auto* kind = std::get_if<ArtinSchreierKind>(&ctx->kind());
  if (!kind) throw Error(ErrorCode::BadInput, "not an Artin-Schreier context");
  return *kind;
}

}  // namespace

bool as_irreducible(const FieldElement& alpha) { return !trace_to_prime(alpha).is_zero(); }

FpScalar compute_h(const FieldElement& alpha) {
  FieldElement h = relative_conjugate_sum(alpha, 1);
  if (!h.in_prime_field()) throw Error(ErrorCode::NotInPrimeField, "conjugate sum of alpha is not in Z_p");
  FpScalar out(alpha.ctx()->prime(), h.coords()[0]);
  if (out.is_zero()) throw Error(ErrorCode::ZeroTrace, "alpha has zero trace; x^p - x - alpha is reducible");
  return out;
}

CtxPtr as_extend(const FieldElement& alpha) {
  if (!as_irreducible(alpha))
    throw Error(ErrorCode::Reducible, "x^p - x - alpha is reducible (zero trace)");
  const auto& k = alpha.ctx();
  const std::uint32_t p = k->prime().value();
  std::vector<Coords> coeffs(p + 1, k->zero());
  coeffs[0] = k->neg(alpha.coords());
  coeffs[1] = k->from_prime(p - 1);
  coeffs[p] = k->one();
  return FieldCtx::extension(k, Poly(k, std::move(coeffs)), ArtinSchreierKind{alpha.coords()});
}

bool shift_preserves_normality(const FieldElement& delta, const FieldElement& d, std::size_t step) {
  require_same_ctx(delta, d);
  const std::size_t n = delta.ctx()->abs_degree();
  if (step == 0 || n % step != 0) throw Error(ErrorCode::BadStep, "step does not divide the absolute degree");
  if (!in_subfield(d, step)) throw Error(ErrorCode::NotInSubfield, "d is not in the subfield of p^step elements");
  const std::size_t m = n / step;
  FieldElement value = d.scaled(static_cast<std::uint32_t>(m % delta.ctx()->prime().value())) +
                       relative_conjugate_sum(delta, step);
  return !value.is_zero();
}

FieldElement beta_power_element(const CtxPtr& ctx, const FieldElement& c,
                                const std::optional<FieldElement>& epsilon) {
  as_kind(ctx);
  const std::uint32_t p = ctx->prime().value();
  FieldElement beta = FieldElement::generator(ctx);
  FieldElement element = beta.pow(p - 1) - FieldElement::embed(ctx, c);
  if (!epsilon) return element;
  if (!c.in_prime_field()) throw Error(ErrorCode::NotInPrimeField, "c must lie in Z_p when epsilon is given");
  if (epsilon->ctx().get() != ctx->base().get())
    throw Error(ErrorCode::CtxMismatch, "epsilon must belong to the base field");
  if (epsilon->is_zero() || !is_normal_over_prime(*epsilon))
    throw Error(ErrorCode::EpsilonNotNormal, "epsilon is not a normal element of the base over Z_p");
  return FieldElement::embed(ctx, *epsilon) * element;
}

bool is_normal_over_base(const FieldElement& a) {
  const auto& ctx = a.ctx();
  if (ctx->is_prime_field()) return !a.is_zero();
  auto conj = conjugates(a, ctx->base_abs_degree());
  return rank_over_base(conj) == ctx->rel_degree();
}

bool is_normal_over_prime(const FieldElement& a) {
  auto conj = conjugates(a, 1);
  return rank_over_prime(conj) == a.ctx()->abs_degree();
}

FieldElement delta_conjugate_sum_closed_form(const ASLevel& level) {
  const auto& k = level.ctx->base();
  const auto& p = k->prime();
  std::uint32_t b_inv2 = p.inv(p.mul(level.b.value(), level.b.value()));
  Coords value = k->scale(k->inv(level.alpha.coords()), b_inv2);
  return {level.ctx, level.ctx->embed_base(value)};
}

DeltaPair next_delta(const CtxPtr& level_ctx, const FpScalar& b) {
  const auto& kind = as_kind(level_ctx);
  if (b.is_zero()) throw Error(ErrorCode::ZeroB, "b must be a nonzero element of Z_p");
  if (!(b.modulus() == level_ctx->prime())) throw Error(ErrorCode::BadInput, "b belongs to a different prime field");
  FieldElement beta = FieldElement::generator(level_ctx);
  FieldElement delta_inv = ext_inv(beta) - FieldElement::from_prime(level_ctx, b.value());
  FieldElement delta = ext_inv(delta_inv);

  if (!is_normal_over_base(delta_inv))
    throw Error(ErrorCode::NormalityFailure, "beta^-1 - b is not normal over the base field");
  if (!is_normal_over_prime(delta_inv))
    throw Error(ErrorCode::NormalityFailure, "beta^-1 - b is not normal over Z_p");
  if (trace_to_prime(delta).is_zero())
    throw Error(ErrorCode::NormalityFailure, "delta has zero trace; next modulus would be reducible");

  ASLevel probe{level_ctx, FieldElement(level_ctx->base(), kind.alpha), FpScalar(level_ctx->prime(), 0),
                beta, beta, delta_inv, delta, b};
  FieldElement sum = relative_conjugate_sum(delta, level_ctx->base_abs_degree());
  if (!(sum == delta_conjugate_sum_closed_form(probe)))
    throw Error(ErrorCode::NormalityFailure, "conjugate sum of delta differs from b^-2 alpha^-1");
  return {std::move(delta_inv), std::move(delta)};
}

ASLevel make_as_level(const FieldElement& alpha, const FpScalar& b) {
  FpScalar h = compute_h(alpha);
  CtxPtr ctx = as_extend(alpha);
  FieldElement beta = FieldElement::generator(ctx);
  FieldElement gamma = ext_inv(beta);
  auto [delta_inv, delta] = next_delta(ctx, b);
  return {ctx, alpha, h, beta, gamma, delta_inv, delta, b};
}

}  // namespace nbtower
