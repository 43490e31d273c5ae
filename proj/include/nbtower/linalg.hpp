#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nbtower/field.hpp"

namespace nbtower {

/// Rank of a set of vectors over Z_p (rows may have any common length).
std::size_t rank_mod_p(std::vector<Coords> rows, const PrimeModulus& p);

/// Basis of {v : M v = 0} for a column-major n x n matrix over Z_p.
std::vector<Coords> kernel_mod_p(const std::vector<std::uint32_t>& column_major, std::size_t n,
                                 const PrimeModulus& p);

/// Rank of the flattened prime-field coordinate vectors. Throws CtxMismatch.
std::size_t rank_over_prime(std::span<const FieldElement> elements);

/// Rank over the immediate base field, by elimination with base arithmetic.
std::size_t rank_over_base(std::span<const FieldElement> elements);

/// Prime-field basis of the subfield with p^step elements, found as the fixed
/// space of the p^step-power map. Throws BadStep.
std::vector<FieldElement> subfield_basis(const CtxPtr& ctx, std::size_t step);

/// True when a^(p^step) = a.
bool in_subfield(const FieldElement& a, std::size_t step);

/// Minimal polynomial over Z_p, from the first linear dependence among
/// 1, a, a^2, ...
Poly min_poly(const FieldElement& a);

/// Conjugates a^(p^(i*step)) for 0 <= i < abs_degree/step. Throws BadStep.
std::vector<FieldElement> conjugates(const FieldElement& a, std::size_t step);

}  // namespace nbtower
