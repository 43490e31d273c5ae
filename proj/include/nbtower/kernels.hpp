#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "nbtower/field.hpp"
#include "nbtower/structure_tables.hpp"

namespace nbtower {

/// Arithmetic in the relative normal basis {g_0, ..., g_(m-1)} of E over K
/// described by a MultTable. Coordinates are m blocks of w = [K : Z_p] words,
/// block i holding the K-coefficient of g_i.
class NormalBasis {
 public:
  explicit NormalBasis(const MultTable& table);

  std::size_t width() const noexcept { return m_ * w_; }
  std::size_t conjugates() const noexcept { return m_; }
  const CtxPtr& ctx() const noexcept { return ctx_; }

  Coords to_normal(const Coords& poly) const;
  Coords from_normal(const Coords& normal) const;

  /// Table-driven product; `out` must not alias the inputs.
  void mul_into(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out,
                std::uint32_t* scratch) const;
  std::size_t scratch_words() const noexcept { return scratch_words_; }

  /// x -> x^(p^step): K-coefficients are fixed, so this is a block rotation.
  void frobenius_into(const std::uint32_t* a, std::uint32_t* out) const;

 private:
  struct Entry {
    std::size_t index;  // conjugate index, or m_ for the redundant constant
    bool scalar;
    std::uint32_t s;
    Coords coeff;
  };

  void accumulate(const Entry& e, const std::uint32_t* prod, std::uint32_t* dst, std::uint32_t* tmp,
                  std::uint32_t* sub) const;

  CtxPtr ctx_;
  CtxPtr base_;
  std::size_t m_ = 0;
  std::size_t w_ = 0;
  std::size_t scratch_words_ = 0;
  std::vector<std::vector<Entry>> entries_;  // [i*m + j]
  std::vector<Entry> one_;                   // 1 in the normal basis
  std::vector<Coords> to_normal_;            // inverse of the conjugate matrix over K, [k*m + i]
  std::vector<Coords> from_normal_;          // conjugate matrix, [i*m + k]
};

/// Prime-field matrix of x -> x^(p^step) in the polynomial basis.
class FrobeniusPower {
 public:
  FrobeniusPower(const CtxPtr& ctx, std::size_t step);
  void apply_into(const std::uint32_t* a, std::uint32_t* out) const;
  std::size_t width() const noexcept { return n_; }

 private:
  PrimeModulus p_;
  std::size_t n_;
  std::vector<std::uint32_t> matrix_;  // column-major
};

/// Batch kernels over `count` packed elements. The serial versions are the
/// reference the OpenMP versions are tested against.
namespace kernels {

void poly_mul_serial(const FieldCtx& ctx, std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                     std::span<std::uint32_t> out);
void poly_mul_parallel(const FieldCtx& ctx, std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                       std::span<std::uint32_t> out);

void normal_mul_serial(const NormalBasis& nb, std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                       std::span<std::uint32_t> out);
void normal_mul_parallel(const NormalBasis& nb, std::span<const std::uint32_t> a,
                         std::span<const std::uint32_t> b, std::span<std::uint32_t> out);

void poly_frobenius_serial(const FrobeniusPower& f, std::span<const std::uint32_t> a, std::span<std::uint32_t> out);
void poly_frobenius_parallel(const FrobeniusPower& f, std::span<const std::uint32_t> a,
                             std::span<std::uint32_t> out);

void normal_frobenius_serial(const NormalBasis& nb, std::span<const std::uint32_t> a, std::span<std::uint32_t> out);
void normal_frobenius_parallel(const NormalBasis& nb, std::span<const std::uint32_t> a,
                               std::span<std::uint32_t> out);

/// Number of OpenMP threads the parallel kernels use (1 without OpenMP).
int thread_count();

}  // namespace kernels

}  // namespace nbtower
