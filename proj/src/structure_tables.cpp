#include "nbtower/structure_tables.hpp"

#include <algorithm>
#include <map>

namespace nbtower {

std::size_t SparseRow::weight(const FieldCtx& base) const {
  return terms.size() + (base.is_zero(constant) ? 0 : 1);
}

SparseRow make_row(const FieldCtx& base, Coords constant, std::vector<SparseTerm> terms) {
  std::map<std::size_t, Coords> merged;
  for (auto& t : terms) {
    auto [it, inserted] = merged.emplace(t.index, t.coeff);
    if (!inserted) it->second = base.add(it->second, t.coeff);
  }
  SparseRow row{std::move(constant), {}};
  for (auto& [index, coeff] : merged)
    if (!base.is_zero(coeff)) row.terms.push_back({index, std::move(coeff)});
  return row;
}

namespace {

// (i*h)^-1 in Z_p as a base element.
Coords inv_ih(const FieldCtx& k, std::uint32_t i, const FpScalar& h) {
  const auto& p = k.prime();
  return k.from_prime(p.inv(p.mul(i % p.value(), h.value())));
}

// sum_{i=1}^{p-1} (i*h)^-1, following the p = 2 / p >= 3 case split: for odd p
// the inverses of 1..p-1 pair off to zero.
Coords sum_inv_ih(const FieldCtx& k, const FpScalar& h) {
  if (k.prime().value() == 2) return k.from_prime(k.prime().inv(h.value()));
  return k.zero();
}

}  // namespace

MultTable gamma_table(const ASLevel& level) {
  const auto& k = *level.ctx->base();
  const std::uint32_t p = level.p();
  MultTable t;
  t.generator = level.gamma;
  t.step = level.step();
  t.conjugates = p;
  t.coefficient_field = CoefficientField::Prime;
  for (std::uint32_t i = 1; i < p; ++i) {
    Coords c = inv_ih(k, i, level.h);
    t.rows.push_back(make_row(k, k.zero(), {{0, c}, {i, k.neg(c)}}));
  }
  // sum_i gamma_i = -alpha^-1
  Coords s = k.neg(k.inv(level.alpha.coords()));
  std::vector<SparseTerm> sq;
  if (p == 2) {
    Coords hinv = k.from_prime(k.prime().inv(level.h.value()));
    sq.push_back({0, k.sub(s, hinv)});
    sq.push_back({1, hinv});
  } else {
    sq.push_back({0, s});
    for (std::uint32_t i = 1; i < p; ++i) sq.push_back({i, inv_ih(k, i, level.h)});
  }
  t.square_row = make_row(k, k.zero(), std::move(sq));
  return t;
}

MultTable delta_table(const ASLevel& level) {
  const auto& k = *level.ctx->base();
  const auto& pm = k.prime();
  const std::uint32_t p = level.p();
  const std::uint32_t b = level.b.value();
  Coords bb = k.from_prime(b);
  MultTable t;
  t.generator = level.delta_inv;
  t.step = level.step();
  t.conjugates = p;
  t.coefficient_field = CoefficientField::Prime;
  Coords minus_b2 = k.from_prime(pm.neg(pm.mul(b, b)));
  for (std::uint32_t i = 1; i < p; ++i) {
    Coords c = inv_ih(k, i, level.h);
    t.rows.push_back(make_row(k, minus_b2, {{0, k.sub(c, bb)}, {i, k.neg(k.add(c, bb))}}));
  }
  Coords alpha_inv = k.inv(level.alpha.coords());
  Coords constant = k.neg(k.mul(bb, k.add(bb, alpha_inv)));
  Coords lead = k.neg(k.add(k.add(k.scale(bb, 2), alpha_inv), sum_inv_ih(k, level.h)));
  std::vector<SparseTerm> sq{{0, lead}};
  for (std::uint32_t i = 1; i < p; ++i) sq.push_back({i, inv_ih(k, i, level.h)});
  t.square_row = make_row(k, constant, std::move(sq));
  return t;
}

std::vector<FieldElement> table_conjugates(const MultTable& table) {
  std::vector<FieldElement> conj{table.generator};
  for (std::size_t i = 1; i < table.conjugates; ++i) conj.push_back(frobenius(conj.back(), table.step));
  return conj;
}

FieldElement evaluate_row(const MultTable& table, const SparseRow& row, const std::vector<FieldElement>& conj) {
  const auto& e = table.generator.ctx();
  FieldElement acc(e, e->embed_base(row.constant));
  for (const auto& term : row.terms) {
    if (term.index >= conj.size()) throw Error(ErrorCode::BadInput, "row references a missing conjugate");
    acc = acc + FieldElement(e, e->embed_base(term.coeff)) * conj[term.index];
  }
  return acc;
}

std::vector<std::vector<SparseRow>> full_table(const MultTable& table) {
  const std::size_t m = table.conjugates;
  const auto& k = *table.coefficient_ctx();
  std::vector<std::vector<SparseRow>> out(m, std::vector<SparseRow>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const SparseRow& src = table.row((j + m - i) % m);
      const std::uint64_t shift = static_cast<std::uint64_t>(i) * table.step;
      std::vector<SparseTerm> terms;
      for (const auto& term : src.terms) terms.push_back({(term.index + i) % m, k.frobenius(term.coeff, shift)});
      out[i][j] = make_row(k, k.frobenius(src.constant, shift), std::move(terms));
    }
  }
  return out;
}

SparsityReport sparsity(const MultTable& table) {
  SparsityReport r;
  if (table.conjugates == 0) return r;
  const auto& k = *table.coefficient_ctx();
  auto count = [&](const SparseRow& row, bool off_square) {
    r.nonzero_structure_constants += row.terms.size();
    r.max_row_weight = std::max(r.max_row_weight, row.weight(k));
    if (!k.is_zero(row.constant)) ++r.constant_terms_used;
    if (!off_square) return;
    if (row.terms.size() == 2) ++r.rows_with_two_terms;
    auto tally = [&](const Coords& c) {
      ++r.total_coefficients;
      if (k.in_prime_field(c)) ++r.prime_field_coefficients;
    };
    for (const auto& t : row.terms) tally(t.coeff);
    if (!k.is_zero(row.constant)) tally(row.constant);
  };
  for (const auto& row : table.rows) count(row, true);
  count(table.square_row, false);
  r.coefficients_in_prime_field = r.prime_field_coefficients == r.total_coefficients;
  return r;
}

VerificationReport verify_table(const MultTable& table, const std::string& label) {
  VerificationReport report;
  if (table.conjugates == 0) return report;
  auto conj = table_conjugates(table);
  for (std::size_t i = 0; i < table.conjugates; ++i) {
    FieldElement expected = table.generator * conj[i];
    FieldElement actual = evaluate_row(table, table.row(i), conj);
    std::string name = i == 0 ? label + " square row" : label + " row " + std::to_string(i);
    report.check(expected == actual, name, "g * g_" + std::to_string(i), expected.to_string(), actual.to_string());
  }
  return report;
}

VerificationReport verify_full_table(const MultTable& table, const std::string& label) {
  VerificationReport report;
  if (table.conjugates == 0) return report;
  auto conj = table_conjugates(table);
  auto full = full_table(table);
  for (std::size_t i = 0; i < table.conjugates; ++i) {
    for (std::size_t j = 0; j < table.conjugates; ++j) {
      FieldElement expected = conj[i] * conj[j];
      FieldElement actual = evaluate_row(table, full[i][j], conj);
      report.check(expected == actual, label + " entry (" + std::to_string(i) + "," + std::to_string(j) + ")",
                   "g_i * g_j", expected.to_string(), actual.to_string());
    }
  }
  return report;
}

}  // namespace nbtower
