#include "nbtower/tower.hpp"

#include <limits>
#include <string>

#include "nbtower/linalg.hpp"

namespace nbtower {

TowerSpec build_tower(PrimeModulus p, std::size_t num_levels, std::optional<FpScalar> b, std::size_t max_abs_degree) {
  if (num_levels < 1) throw Error(ErrorCode::BadInput, "a tower needs at least one level");
  std::size_t degree = 1;
  for (std::size_t i = 0; i < num_levels; ++i) {
    if (degree > max_abs_degree / p.value())
      throw Error(ErrorCode::ScaleExceeded, "p^" + std::to_string(num_levels) + " exceeds the maximum degree " +
                                                std::to_string(max_abs_degree));
    degree *= p.value();
  }
  FpScalar bb = b.value_or(FpScalar(p, 1));
  if (bb.is_zero()) throw Error(ErrorCode::ZeroB, "b must be a nonzero element of Z_p");

  TowerSpec spec{p, bb, {}};
  CtxPtr base = FieldCtx::prime_field(p);
  FieldElement alpha = FieldElement::one(base);
  for (std::size_t i = 0; i < num_levels; ++i) {
    ASLevel level = make_as_level(alpha, bb);
    auto invariants = verify_as_level(level);
    if (!invariants.ok())
      throw Error(ErrorCode::NormalityFailure, "level " + std::to_string(i + 1) + ": " + invariants.summary());
    TowerLevel entry{level, gamma_table(level), delta_table(level)};
    auto tables = verify_table(entry.gamma, "gamma");
    tables.merge(verify_table(entry.delta, "delta"));
    if (!tables.ok())
      throw Error(ErrorCode::ConstructionFailure, "level " + std::to_string(i + 1) + ": " + tables.summary());
    alpha = level.delta;
    spec.levels.push_back(std::move(entry));
  }
  return spec;
}

VerificationReport verify_as_level(const ASLevel& level) {
  VerificationReport r;
  const auto& e = level.ctx;
  const std::string where = "level " + std::to_string(e->depth());
  const auto* kind = std::get_if<ArtinSchreierKind>(&e->kind());
  r.check(kind != nullptr && kind->alpha == level.alpha.coords(), "Artin-Schreier kind records alpha", where);
  const std::uint32_t p = level.p();
  r.check(e->rel_degree() == p, "relative degree is p", where, std::to_string(p), std::to_string(e->rel_degree()));
  const auto& k = e->base();
  bool modulus_ok = e->modulus().degree() == static_cast<int>(p) && e->modulus().coeff(0) == k->neg(level.alpha.coords()) &&
                    e->modulus().coeff(1) == k->from_prime(p - 1);
  for (std::uint32_t j = 2; j < p; ++j) modulus_ok = modulus_ok && k->is_zero(e->modulus().coeff(j));
  r.check(modulus_ok, "modulus is x^p - x - alpha", where, "x^p - x - alpha", e->modulus().to_string());

  FpScalar trace = trace_to_prime(level.alpha);
  r.check(!trace.is_zero(), "trace criterion: Tr(alpha) != 0", where, "nonzero", std::to_string(trace.value()));
  FieldElement h = relative_conjugate_sum(level.alpha, 1);
  r.check(h.in_prime_field() && h.coords()[0] == level.h.value() && trace.value() == level.h.value(),
          "h = sum alpha^(p^i) = Tr(alpha)", where, std::to_string(level.h.value()), h.to_string());

  r.check(level.beta == FieldElement::generator(e), "beta is the adjoined root", where);
  r.check((level.beta * level.gamma).coords() == e->one(), "gamma = beta^-1", where);
  FieldElement expected_dinv = level.gamma - FieldElement::from_prime(e, level.b.value());
  r.check(level.delta_inv == expected_dinv, "delta^-1 = beta^-1 - b", where, expected_dinv.to_string(),
          level.delta_inv.to_string());
  r.check((level.delta * level.delta_inv).coords() == e->one(), "delta * delta^-1 = 1", where);
  r.check(is_normal_over_base(level.delta_inv), "delta^-1 normal over K", where);
  r.check(is_normal_over_prime(level.delta_inv), "delta^-1 normal over Z_p", where);
  FpScalar tdelta = trace_to_prime(level.delta);
  r.check(!tdelta.is_zero(), "Tr(delta) != 0", where, "nonzero", std::to_string(tdelta.value()));
  FieldElement sum = relative_conjugate_sum(level.delta, level.step());
  FieldElement closed = delta_conjugate_sum_closed_form(level);
  r.check(sum == closed, "sum delta^(p^(in)) = b^-2 alpha^-1", where, closed.to_string(), sum.to_string());
  return r;
}

VerificationReport verify_beta_conjugates(const ASLevel& level) {
  VerificationReport r;
  const auto& e = level.ctx;
  const std::size_t n = level.step();
  const std::uint32_t p = level.p();
  // s_j = sum_{l<j} alpha^(p^l), in K
  std::vector<FieldElement> s{FieldElement::zero(e->base())};
  FieldElement conj = level.alpha;
  for (std::size_t j = 1; j < n; ++j) {
    s.push_back(s.back() + conj);
    conj = frobenius(conj, 1);
  }
  for (std::uint32_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      FieldElement lhs = frobenius(level.beta, j + static_cast<std::size_t>(i) * n);
      FieldElement rhs = level.beta + FieldElement::embed(e, s[j]) +
                         FieldElement::from_prime(e, e->prime().mul(i, level.h.value()));
      r.check(lhs == rhs, "beta^(p^(j+i*n)) = beta + s_j + i*h",
              "level " + std::to_string(e->depth()) + " i=" + std::to_string(i) + " j=" + std::to_string(j),
              rhs.to_string(), lhs.to_string());
    }
  }
  return r;
}

}  // namespace nbtower
