#pragma once

#include <random>

#include "nbtower/field.hpp"
#include "nbtower/tower.hpp"

namespace testing_support {

inline nbtower::FieldElement random_element(const nbtower::CtxPtr& ctx, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> d(0, ctx->prime().value() - 1);
  nbtower::Coords c(ctx->abs_degree());
  for (auto& x : c) x = d(rng);
  return {ctx, c};
}

inline nbtower::FieldElement random_nonzero(const nbtower::CtxPtr& ctx, std::mt19937_64& rng) {
  for (;;) {
    auto a = random_element(ctx, rng);
    if (!a.is_zero()) return a;
  }
}

/// F_2 < F_4 < F_16 with b = 1, the running example of the tests.
struct Binary {
  nbtower::TowerSpec spec = nbtower::build_tower(nbtower::PrimeModulus(2), 2);
  nbtower::CtxPtr f2 = spec.levels[0].level.ctx->base();
  nbtower::CtxPtr f4 = spec.levels[0].level.ctx;
  nbtower::CtxPtr f16 = spec.levels[1].level.ctx;
  nbtower::FieldElement beta = nbtower::FieldElement::generator(f4);
  nbtower::FieldElement one = nbtower::FieldElement::one(f4);
};

}  // namespace testing_support
