#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nbtower/artin_schreier.hpp"
#include "nbtower/config.hpp"
#include "nbtower/oracle.hpp"
#include "nbtower/structure_tables.hpp"

namespace nbtower {

struct TowerLevel {
  ASLevel level;
  MultTable gamma;
  MultTable delta;
};

/// F_p = L_0 < L_1 < ... < L_k with [L_i : L_{i-1}] = p. Level 1 uses
/// alpha = 1; level i+1 uses the previous level's delta.
struct TowerSpec {
  PrimeModulus p;
  FpScalar b;
  std::vector<TowerLevel> levels;
};

/// Throws ScaleExceeded when p^num_levels exceeds `max_abs_degree`, ZeroB, and
/// NormalityFailure / ConstructionFailure if any level invariant or table
/// check fails.
TowerSpec build_tower(PrimeModulus p, std::size_t num_levels, std::optional<FpScalar> b = std::nullopt,
                      std::size_t max_abs_degree = max_degree());

/// Level invariants: modulus shape, nonzero h, delta_inv = beta^-1 - b,
/// delta * delta_inv = 1, normality over K and Z_p, Tr(delta) != 0 and the
/// closed-form conjugate sum of delta.
VerificationReport verify_as_level(const ASLevel& level);

/// beta^(p^(j + i*n)) = beta + s_j + i*h for 0 <= i < p, 0 <= j < n.
VerificationReport verify_beta_conjugates(const ASLevel& level);

}  // namespace nbtower
