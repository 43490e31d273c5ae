#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nbtower/config.hpp"
#include "nbtower/field.hpp"

namespace nbtower {

struct ASLevel;

struct CheckFailure {
  std::string check;
  std::string input;
  std::string expected;
  std::string actual;
};

/// Outcome of a batch of checks. Empty failures iff everything passed.
struct VerificationReport {
  std::size_t checks_run = 0;
  std::vector<CheckFailure> failures;

  bool ok() const noexcept { return failures.empty(); }
  /// Records one check; returns `passed` so callers can branch on it.
  bool check(bool passed, std::string name, std::string input, std::string expected = "true",
             std::string actual = "false");
  void merge(const VerificationReport& other);
  std::string summary() const;
};

/// Brute-force verifiers. They share only the ring arithmetic with the
/// construction code: conjugates come from repeated p-th powers, never from
/// the cached Frobenius matrix or any closed form.
namespace oracle {

/// Conjugates a^(p^(i*step)) by repeated exponentiation. Throws BadStep.
std::vector<FieldElement> conjugates_by_powering(const FieldElement& a, std::size_t step);

/// True iff the abs_degree/step conjugates of `a` span the field over its
/// subfield of p^step elements, decided by prime-field rank of the products
/// (subfield basis) x (conjugates). Throws BadStep.
bool is_normal_bruteforce(const FieldElement& a, std::size_t step);

/// Distinct-degree sieve: f has no factor of degree <= deg/2. Throws
/// ScaleExceeded when deg(f) * abs_degree(base) exceeds `bound`.
bool is_irreducible_bruteforce(const Poly& f, std::size_t bound = max_degree());

/// Product of (x - c) over the distinct conjugates c of `a`, returned over Z_p.
Poly min_poly_via_conjugates(const FieldElement& a, std::size_t bound = max_degree());

/// Checks the minimal-polynomial chain m_beta(x) = m_alpha(x^p - x),
/// its reciprocal, the shift by b, and that the coefficient of x in
/// m_{delta^-1} is nonzero. `m_alpha_override` replaces the computed minimal
/// polynomial of alpha (mutation testing).
VerificationReport verify_reciprocal_relations(const ASLevel& level,
                                               const std::optional<Poly>& m_alpha_override = std::nullopt,
                                               std::size_t bound = max_degree());

}  // namespace oracle

}  // namespace nbtower
