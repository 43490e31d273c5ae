#include "nbtower/kernels.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "nbtower/linalg.hpp"

namespace nbtower {

namespace {

// Inverse of an m x m matrix over K, row-major. Throws ZeroInverse when singular.
std::vector<Coords> invert_over(const FieldCtx& k, std::vector<Coords> a, std::size_t m) {
  std::vector<Coords> inv(m * m, k.zero());
  for (std::size_t i = 0; i < m; ++i) inv[i * m + i] = k.one();
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t sel = col;
    while (sel < m && k.is_zero(a[sel * m + col])) ++sel;
    if (sel == m) throw Error(ErrorCode::ZeroInverse, "conjugate matrix is singular; generator is not normal");
    for (std::size_t c = 0; c < m; ++c) {
      std::swap(a[sel * m + c], a[col * m + c]);
      std::swap(inv[sel * m + c], inv[col * m + c]);
    }
    Coords piv = k.inv(a[col * m + col]);
    for (std::size_t c = 0; c < m; ++c) {
      a[col * m + c] = k.mul(a[col * m + c], piv);
      inv[col * m + c] = k.mul(inv[col * m + c], piv);
    }
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col || k.is_zero(a[r * m + col])) continue;
      Coords f = a[r * m + col];
      for (std::size_t c = 0; c < m; ++c) {
        a[r * m + c] = k.sub(a[r * m + c], k.mul(f, a[col * m + c]));
        inv[r * m + c] = k.sub(inv[r * m + c], k.mul(f, inv[col * m + c]));
      }
    }
  }
  return inv;
}

}  // namespace

NormalBasis::NormalBasis(const MultTable& table)
    : ctx_(table.generator.ctx()), base_(ctx_->base()), m_(table.conjugates), w_(ctx_->base_abs_degree()) {
  if (!base_ || m_ != ctx_->rel_degree())
    throw Error(ErrorCode::BadInput, "table does not describe a relative normal basis of its field");
  const FieldCtx& k = *base_;
  auto conj = table_conjugates(table);
  from_normal_.resize(m_ * m_);
  for (std::size_t i = 0; i < m_; ++i)
    for (std::size_t c = 0; c < m_; ++c) from_normal_[i * m_ + c] = ctx_->coefficient(conj[i].coords(), c);
  to_normal_ = invert_over(k, from_normal_, m_);

  auto make_entry = [&](std::size_t index, const Coords& c) {
    Entry e{index, k.in_prime_field(c), c[0], c};
    return e;
  };
  auto full = full_table(table);
  entries_.resize(m_ * m_);
  for (std::size_t i = 0; i < m_; ++i)
    for (std::size_t j = 0; j < m_; ++j) {
      auto& list = entries_[i * m_ + j];
      for (const auto& t : full[i][j].terms) list.push_back(make_entry(t.index, t.coeff));
      if (!k.is_zero(full[i][j].constant)) list.push_back(make_entry(m_, full[i][j].constant));
    }
  Coords one_nb = to_normal(ctx_->one());
  for (std::size_t i = 0; i < m_; ++i) {
    Coords c(one_nb.begin() + i * w_, one_nb.begin() + (i + 1) * w_);
    if (!k.is_zero(c)) one_.push_back(make_entry(i, c));
  }
  // prod, tmp, constant accumulator, then the base multiplier's own scratch.
  scratch_words_ = 3 * w_ + k.scratch_words();
}

Coords NormalBasis::to_normal(const Coords& poly) const {
  const FieldCtx& k = *base_;
  Coords out(m_ * w_, 0);
  for (std::size_t i = 0; i < m_; ++i) {
    Coords acc = k.zero();
    for (std::size_t c = 0; c < m_; ++c) acc = k.add(acc, k.mul(ctx_->coefficient(poly, c), to_normal_[c * m_ + i]));
    std::copy(acc.begin(), acc.end(), out.begin() + i * w_);
  }
  return out;
}

Coords NormalBasis::from_normal(const Coords& normal) const {
  const FieldCtx& k = *base_;
  Coords out(m_ * w_, 0);
  for (std::size_t c = 0; c < m_; ++c) {
    Coords acc = k.zero();
    for (std::size_t i = 0; i < m_; ++i) {
      Coords ni(normal.begin() + i * w_, normal.begin() + (i + 1) * w_);
      acc = k.add(acc, k.mul(ni, from_normal_[i * m_ + c]));
    }
    std::copy(acc.begin(), acc.end(), out.begin() + c * w_);
  }
  return out;
}

void NormalBasis::accumulate(const Entry& e, const std::uint32_t* prod, std::uint32_t* dst, std::uint32_t* tmp,
                             std::uint32_t* sub) const {
  const PrimeModulus& p = ctx_->prime();
  if (e.scalar) {
    for (std::size_t x = 0; x < w_; ++x) dst[x] = p.add(dst[x], p.mul(prod[x], e.s));
  } else {
    base_->mul_into(prod, e.coeff.data(), tmp, sub);
    for (std::size_t x = 0; x < w_; ++x) dst[x] = p.add(dst[x], tmp[x]);
  }
}

void NormalBasis::mul_into(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out,
                           std::uint32_t* scratch) const {
  std::uint32_t* prod = scratch;
  std::uint32_t* tmp = prod + w_;
  std::uint32_t* constant = tmp + w_;
  std::uint32_t* sub = constant + w_;
  std::fill(out, out + m_ * w_, 0u);
  std::fill(constant, constant + w_, 0u);
  auto zero_block = [&](const std::uint32_t* x) { return std::all_of(x, x + w_, [](std::uint32_t v) { return v == 0; }); };
  for (std::size_t i = 0; i < m_; ++i) {
    const std::uint32_t* ai = a + i * w_;
    if (zero_block(ai)) continue;
    for (std::size_t j = 0; j < m_; ++j) {
      base_->mul_into(ai, b + j * w_, prod, sub);
      for (const auto& e : entries_[i * m_ + j]) {
        std::uint32_t* dst = e.index == m_ ? constant : out + e.index * w_;
        accumulate(e, prod, dst, tmp, sub);
      }
    }
  }
  if (zero_block(constant)) return;
  for (const auto& e : one_) accumulate(e, constant, out + e.index * w_, tmp, sub);
}

void NormalBasis::frobenius_into(const std::uint32_t* a, std::uint32_t* out) const {
  // g_i -> g_(i+1)
  std::copy(a, a + (m_ - 1) * w_, out + w_);
  std::copy(a + (m_ - 1) * w_, a + m_ * w_, out);
}

FrobeniusPower::FrobeniusPower(const CtxPtr& ctx, std::size_t step) : p_(ctx->prime()), n_(ctx->abs_degree()) {
  matrix_.resize(n_ * n_);
  for (std::size_t k = 0; k < n_; ++k) {
    Coords e(n_, 0);
    e[k] = 1;
    Coords img = ctx->frobenius(e, step);
    std::copy(img.begin(), img.end(), matrix_.begin() + k * n_);
  }
}

void FrobeniusPower::apply_into(const std::uint32_t* a, std::uint32_t* out) const {
  std::fill(out, out + n_, 0u);
  for (std::size_t c = 0; c < n_; ++c) {
    if (a[c] == 0) continue;
    const std::uint32_t* col = matrix_.data() + c * n_;
    for (std::size_t r = 0; r < n_; ++r) out[r] = p_.add(out[r], p_.mul(col[r], a[c]));
  }
}

namespace kernels {

namespace {

void check_sizes(std::size_t width, std::size_t a, std::size_t b, std::size_t out) {
  if (width == 0 || a % width != 0 || a != b || a != out)
    throw Error(ErrorCode::BadInput, "batch buffers must hold the same whole number of elements");
}

}  // namespace

void poly_mul_serial(const FieldCtx& ctx, std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                     std::span<std::uint32_t> out) {
  const std::size_t n = ctx.abs_degree();
  check_sizes(n, a.size(), b.size(), out.size());
  std::vector<std::uint32_t> scratch(ctx.scratch_words());
  for (std::size_t i = 0; i < a.size() / n; ++i)
    ctx.mul_into(a.data() + i * n, b.data() + i * n, out.data() + i * n, scratch.data());
}

void poly_mul_parallel(const FieldCtx& ctx, std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                       std::span<std::uint32_t> out) {
  const std::size_t n = ctx.abs_degree();
  check_sizes(n, a.size(), b.size(), out.size());
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(a.size() / n);
#pragma omp parallel
  {
    std::vector<std::uint32_t> scratch(ctx.scratch_words());
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i)
      ctx.mul_into(a.data() + i * n, b.data() + i * n, out.data() + i * n, scratch.data());
  }
}

void normal_mul_serial(const NormalBasis& nb, std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                       std::span<std::uint32_t> out) {
  const std::size_t n = nb.width();
  check_sizes(n, a.size(), b.size(), out.size());
  std::vector<std::uint32_t> scratch(nb.scratch_words());
  for (std::size_t i = 0; i < a.size() / n; ++i)
    nb.mul_into(a.data() + i * n, b.data() + i * n, out.data() + i * n, scratch.data());
}

void normal_mul_parallel(const NormalBasis& nb, std::span<const std::uint32_t> a,
                         std::span<const std::uint32_t> b, std::span<std::uint32_t> out) {
  const std::size_t n = nb.width();
  check_sizes(n, a.size(), b.size(), out.size());
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(a.size() / n);
#pragma omp parallel
  {
    std::vector<std::uint32_t> scratch(nb.scratch_words());
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < count; ++i)
      nb.mul_into(a.data() + i * n, b.data() + i * n, out.data() + i * n, scratch.data());
  }
}

void poly_frobenius_serial(const FrobeniusPower& f, std::span<const std::uint32_t> a, std::span<std::uint32_t> out) {
  const std::size_t n = f.width();
  check_sizes(n, a.size(), a.size(), out.size());
  for (std::size_t i = 0; i < a.size() / n; ++i) f.apply_into(a.data() + i * n, out.data() + i * n);
}

void poly_frobenius_parallel(const FrobeniusPower& f, std::span<const std::uint32_t> a,
                             std::span<std::uint32_t> out) {
  const std::size_t n = f.width();
  check_sizes(n, a.size(), a.size(), out.size());
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(a.size() / n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) f.apply_into(a.data() + i * n, out.data() + i * n);
}

void normal_frobenius_serial(const NormalBasis& nb, std::span<const std::uint32_t> a, std::span<std::uint32_t> out) {
  const std::size_t n = nb.width();
  check_sizes(n, a.size(), a.size(), out.size());
  for (std::size_t i = 0; i < a.size() / n; ++i) nb.frobenius_into(a.data() + i * n, out.data() + i * n);
}

void normal_frobenius_parallel(const NormalBasis& nb, std::span<const std::uint32_t> a,
                               std::span<std::uint32_t> out) {
  const std::size_t n = nb.width();
  check_sizes(n, a.size(), a.size(), out.size());
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(a.size() / n);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) nb.frobenius_into(a.data() + i * n, out.data() + i * n);
}

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace kernels

}  // namespace nbtower
