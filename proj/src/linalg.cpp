#include "nbtower/linalg.hpp"

#include <string>

namespace nbtower {

namespace {

// Reduces `v` against the echelon rows; returns the pivot column of the
// remainder or npos when it vanished. `combo` tracks the same row operations.
struct Echelon {
  const PrimeModulus& p;
  std::vector<Coords> rows;
  std::vector<std::size_t> pivots;

  std::size_t reduce(Coords& v) const {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      std::uint32_t c = v[pivots[r]];
      if (c == 0) continue;
      const Coords& row = rows[r];
      for (std::size_t k = 0; k < v.size(); ++k)
        if (row[k]) v[k] = p.sub(v[k], p.mul(c, row[k]));
    }
    for (std::size_t k = 0; k < v.size(); ++k)
      if (v[k]) return k;
    return static_cast<std::size_t>(-1);
  }

  void insert(Coords v, std::size_t pivot) {
    std::uint32_t inv = p.inv(v[pivot]);
    for (auto& x : v) x = p.mul(x, inv);
    rows.push_back(std::move(v));
    pivots.push_back(pivot);
  }
};

}  // namespace

std::size_t rank_mod_p(std::vector<Coords> rows, const PrimeModulus& p) {
  Echelon e{p, {}, {}};
  for (auto& v : rows) {
    std::size_t piv = e.reduce(v);
    if (piv != static_cast<std::size_t>(-1)) e.insert(std::move(v), piv);
  }
  return e.rows.size();
}

std::vector<Coords> kernel_mod_p(const std::vector<std::uint32_t>& m, std::size_t n, const PrimeModulus& p) {
  // Row-reduce the row-major copy to RREF, then read off the free columns.
  std::vector<Coords> a(n, Coords(n));
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) a[r][c] = m[c * n + r];
  std::vector<std::size_t> pivot_col;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t sel = row;
    while (sel < n && a[sel][col] == 0) ++sel;
    if (sel == n) continue;
    std::swap(a[sel], a[row]);
    std::uint32_t inv = p.inv(a[row][col]);
    for (auto& x : a[row]) x = p.mul(x, inv);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == row || a[r][col] == 0) continue;
      std::uint32_t f = a[r][col];
      for (std::size_t k = 0; k < n; ++k) a[r][k] = p.sub(a[r][k], p.mul(f, a[row][k]));
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_col) is_pivot[c] = true;
  std::vector<Coords> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Coords v(n, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = p.neg(a[r][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::size_t rank_over_prime(std::span<const FieldElement> elements) {
  if (elements.empty()) return 0;
  std::vector<Coords> rows;
  rows.reserve(elements.size());
  for (const auto& e : elements) {
    require_same_ctx(elements[0], e);
    rows.push_back(e.coords());
  }
  return rank_mod_p(std::move(rows), elements[0].ctx()->prime());
}

std::size_t rank_over_base(std::span<const FieldElement> elements) {
  if (elements.empty()) return 0;
  const auto& ctx = elements[0].ctx();
  if (ctx->is_prime_field()) return rank_over_prime(elements);
  const auto& k = ctx->base();
  const std::size_t d = ctx->rel_degree();
  std::vector<std::vector<Coords>> m;
  for (const auto& e : elements) {
    require_same_ctx(elements[0], e);
    std::vector<Coords> row(d);
    for (std::size_t i = 0; i < d; ++i) row[i] = ctx->coefficient(e.coords(), i);
    m.push_back(std::move(row));
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < d && rank < m.size(); ++col) {
    std::size_t sel = rank;
    while (sel < m.size() && k->is_zero(m[sel][col])) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[rank]);
    Coords inv = k->inv(m[rank][col]);
    for (std::size_t r = rank + 1; r < m.size(); ++r) {
      if (k->is_zero(m[r][col])) continue;
      Coords f = k->mul(m[r][col], inv);
      for (std::size_t c = col; c < d; ++c) m[r][c] = k->sub(m[r][c], k->mul(f, m[rank][c]));
    }
    ++rank;
  }
  return rank;
}

std::vector<FieldElement> subfield_basis(const CtxPtr& ctx, std::size_t step) {
  const std::size_t n = ctx->abs_degree();
  if (step == 0 || n % step != 0)
    throw Error(ErrorCode::BadStep, "step " + std::to_string(step) + " does not divide " + std::to_string(n));
  const auto& p = ctx->prime();
  // Column k of (F^step - I).
  std::vector<std::uint32_t> m(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    Coords e(n, 0);
    e[k] = 1;
    Coords img = ctx->frobenius(e, step);
    img[k] = p.sub(img[k], 1);
    std::copy(img.begin(), img.end(), m.begin() + k * n);
  }
  std::vector<FieldElement> out;
  for (auto& v : kernel_mod_p(m, n, p)) out.emplace_back(ctx, std::move(v));
  return out;
}

bool in_subfield(const FieldElement& a, std::size_t step) { return frobenius(a, step) == a; }

Poly min_poly(const FieldElement& a) {
  const auto& ctx = a.ctx();
  const auto& p = ctx->prime();
  const std::size_t n = ctx->abs_degree();
  // Augmented rows [a^k | e_k]; the first power that reduces to zero on the
  // left half carries the dependence in its right half.
  Echelon e{p, {}, {}};
  FieldElement power = FieldElement::one(ctx);
  for (std::size_t k = 0; k <= n; ++k) {
    Coords v(n + n + 1, 0);
    std::copy(power.coords().begin(), power.coords().end(), v.begin());
    v[n + k] = 1;
    std::size_t piv = e.reduce(v);
    if (piv >= n) {
      // Left half vanished: sum_j v[n+j] a^j = 0, with v[n+k] = 1 leading.
      std::vector<std::int64_t> coeffs(k + 1);
      for (std::size_t j = 0; j <= k; ++j) coeffs[j] = v[n + j];
      return Poly::from_ints(ctx->prime_ctx(), coeffs);
    }
    e.insert(std::move(v), piv);
    power = power * a;
  }
  throw Error(ErrorCode::ConstructionFailure, "no linear dependence among powers");
}

std::vector<FieldElement> conjugates(const FieldElement& a, std::size_t step) {
  const std::size_t n = a.ctx()->abs_degree();
  if (step == 0 || n % step != 0)
    throw Error(ErrorCode::BadStep, "step " + std::to_string(step) + " does not divide " + std::to_string(n));
  std::vector<FieldElement> out{a};
  for (std::size_t i = 1; i < n / step; ++i) out.push_back(frobenius(out.back(), step));
  return out;
}

}  // namespace nbtower
