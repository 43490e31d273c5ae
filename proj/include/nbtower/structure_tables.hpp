#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "nbtower/artin_schreier.hpp"
#include "nbtower/field.hpp"
#include "nbtower/oracle.hpp"

namespace nbtower {

/// One conjugate term of a sparse row; `coeff` is a nonzero base element.
struct SparseTerm {
  std::size_t index;
  Coords coeff;

  friend bool operator==(const SparseTerm&, const SparseTerm&) = default;
};

/// constant * 1 + sum coeff * g^(p^(index*step)). The constant slot is the
/// redundant 1 that keeps rows short.
struct SparseRow {
  Coords constant;
  std::vector<SparseTerm> terms;

  std::size_t weight(const FieldCtx& base) const;
  friend bool operator==(const SparseRow&, const SparseRow&) = default;
};

enum class CoefficientField { Prime, Base };

/// Products of a normal generator g with its relative conjugates
/// g_i = g^(p^(i*step)), 0 <= i < conjugates.
struct MultTable {
  FieldElement generator;
  std::size_t step = 0;
  std::size_t conjugates = 0;
  /// rows[i-1] expands g * g_i for 1 <= i < conjugates.
  std::vector<SparseRow> rows;
  SparseRow square_row;
  CoefficientField coefficient_field = CoefficientField::Base;

  /// i == 0 is the square row.
  const SparseRow& row(std::size_t i) const { return i == 0 ? square_row : rows.at(i - 1); }
  SparseRow& row(std::size_t i) { return i == 0 ? square_row : rows.at(i - 1); }
  const CtxPtr& coefficient_ctx() const { return generator.ctx()->base(); }
};

/// Builds a row from (index, coefficient) pairs, merging duplicate indices
/// and dropping zero coefficients.
SparseRow make_row(const FieldCtx& base, Coords constant, std::vector<SparseTerm> terms);

/// gamma = beta^-1: rows gamma^(1+p^(in)) = (ih)^-1 gamma - (ih)^-1 gamma_i and
/// the gamma^2 expansion through sum_i gamma_i = -alpha^-1.
MultTable gamma_table(const ASLevel& level);

/// delta^-1 = gamma - b: rows ((ih)^-1 - b) delta^-1 - ((ih)^-1 + b) delta^-1_i - b^2
/// and the delta^-2 expansion with constant -b(b + alpha^-1).
MultTable delta_table(const ASLevel& level);

/// All m*m products g_i * g_j, entry [i][j]. Row (i, j) is the p^(i*step)
/// image of row j - i (mod m): indices shift by i and base coefficients are
/// fixed because the base has p^step elements.
std::vector<std::vector<SparseRow>> full_table(const MultTable& table);

/// g_i for 0 <= i < conjugates.
std::vector<FieldElement> table_conjugates(const MultTable& table);

FieldElement evaluate_row(const MultTable& table, const SparseRow& row,
                          const std::vector<FieldElement>& conj);

struct SparsityReport {
  std::size_t nonzero_structure_constants = 0;
  std::size_t rows_with_two_terms = 0;
  std::size_t max_row_weight = 0;
  std::size_t constant_terms_used = 0;
  /// Off-square coefficients (basis terms and constants) that lie in Z_p,
  /// out of all off-square coefficients.
  std::size_t prime_field_coefficients = 0;
  std::size_t total_coefficients = 0;
  bool coefficients_in_prime_field = true;

  friend bool operator==(const SparsityReport&, const SparsityReport&) = default;
};

SparsityReport sparsity(const MultTable& table);

/// Re-evaluates every row against a direct product; `label` prefixes the
/// check names ("gamma row 2", ...).
VerificationReport verify_table(const MultTable& table, const std::string& label = "table");

/// Checks every full_table entry against the m*m direct products.
VerificationReport verify_full_table(const MultTable& table, const std::string& label = "table");

}  // namespace nbtower
