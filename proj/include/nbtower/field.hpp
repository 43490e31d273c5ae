#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nbtower/errors.hpp"
#include "nbtower/prime_field.hpp"

namespace nbtower {

/// Flattened prime-field coordinates of a tower element. An element of a
/// level with relative degree d over a base of absolute degree w occupies
/// d*w words: coefficient i of the residue polynomial sits at [i*w, (i+1)*w).
/// Base elements therefore embed as the leading w words.
using Coords = std::vector<std::uint32_t>;

class FieldCtx;
using CtxPtr = std::shared_ptr<const FieldCtx>;

/// Polynomial over the field described by `field`, lowest degree first.
/// The zero polynomial has no coefficients.
class Poly {
 public:
  Poly() = default;
  Poly(CtxPtr field, std::vector<Coords> coeffs);

  static Poly zero(CtxPtr field) { return Poly(std::move(field), {}); }
  static Poly constant(CtxPtr field, Coords c);
  static Poly monomial(CtxPtr field, Coords c, std::size_t degree);
  static Poly x(CtxPtr field);
  /// Polynomial with prime-field integer coefficients, lowest degree first.
  static Poly from_ints(CtxPtr field, const std::vector<std::int64_t>& coeffs);

  const CtxPtr& field() const noexcept { return field_; }
  const std::vector<Coords>& coeffs() const noexcept { return coeffs_; }
  /// Coefficient of x^i, or zero past the degree.
  Coords coeff(std::size_t i) const;
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_monic() const;
  Poly monic() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator-() const;
  Poly scaled(const Coords& c) const;

  friend bool operator==(const Poly& a, const Poly& b);

  std::string to_string() const;

 private:
  void trim();

  CtxPtr field_;
  std::vector<Coords> coeffs_;
};

struct PolyDivision {
  Poly quotient;
  Poly remainder;
};

PolyDivision divmod(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
/// Monic gcd; zero only when both inputs are zero.
Poly gcd(const Poly& a, const Poly& b);
/// base^e mod m.
Poly powmod(const Poly& base, std::uint64_t e, const Poly& m);
/// f(g(x)).
Poly compose(const Poly& f, const Poly& g);
Coords evaluate(const Poly& f, const Coords& point);

struct PrimeKind {};
struct GenericKind {};
/// Modulus x^p - x - alpha over the base.
struct ArtinSchreierKind {
  Coords alpha;
};
/// Modulus x^(q^s) - xi over the base.
struct KummerKind {
  Coords xi;
  std::uint32_t q;
  std::uint32_t s;
};
using CtxKind = std::variant<PrimeKind, GenericKind, ArtinSchreierKind, KummerKind>;

/// One level of an extension tower. Immutable once built; all arithmetic is
/// const and safe to call from several threads.
class FieldCtx : public std::enable_shared_from_this<FieldCtx> {
 public:
  struct Private;
  FieldCtx(const Private&, PrimeModulus p, CtxPtr base, Poly modulus, CtxKind kind);

  static CtxPtr prime_field(PrimeModulus p);
  /// `modulus` must be monic of degree >= 1 over `base`. Irreducibility is the
  /// caller's contract; the oracle module can confirm it.
  static CtxPtr extension(CtxPtr base, Poly modulus, CtxKind kind = GenericKind{});

  const PrimeModulus& prime() const noexcept { return p_; }
  const CtxPtr& base() const noexcept { return base_; }
  /// The prime field at the bottom of this tower.
  CtxPtr prime_ctx() const;
  /// Empty for the prime field.
  const Poly& modulus() const noexcept { return modulus_; }
  const CtxKind& kind() const noexcept { return kind_; }
  bool is_prime_field() const noexcept { return base_ == nullptr; }
  std::size_t rel_degree() const noexcept { return rel_degree_; }
  std::size_t abs_degree() const noexcept { return abs_degree_; }
  std::size_t base_abs_degree() const noexcept { return base_abs_; }
  /// Number of extensions between this context and the prime field.
  std::size_t depth() const noexcept;
  /// log_2 of the field size, used for desk-scale bounds.
  double log2_size() const;

  Coords zero() const { return Coords(abs_degree_, 0); }
  Coords one() const;
  Coords from_prime(std::uint32_t v) const;
  /// Residue class of x (the adjoined root). For the prime field this is 1.
  Coords generator() const;

  bool is_zero(const Coords& a) const;
  bool in_prime_field(const Coords& a) const;
  Coords add(const Coords& a, const Coords& b) const;
  Coords sub(const Coords& a, const Coords& b) const;
  Coords neg(const Coords& a) const;
  Coords scale(const Coords& a, std::uint32_t s) const;
  Coords mul(const Coords& a, const Coords& b) const;
  /// Throws ZeroInverse.
  Coords inv(const Coords& a) const;
  Coords pow(const Coords& a, std::uint64_t e) const;
  /// a^(p^k), via the cached matrix of the p-power map.
  Coords frobenius(const Coords& a, std::uint64_t k) const;

  /// Allocation-free product; `out` may alias `a` or `b`. `scratch` must hold
  /// scratch_words() words.
  void mul_into(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out,
                std::uint32_t* scratch) const;
  std::size_t scratch_words() const noexcept { return scratch_words_; }

  /// Base-field element -> this field.
  Coords embed_base(const Coords& base_elem) const;
  /// Coefficient i (a base-field element) of the residue polynomial.
  Coords coefficient(const Coords& a, std::size_t i) const;
  /// Prime-field linear matrix of x -> x^p, column-major: words
  /// [k*D, (k+1)*D) hold the image of basis vector e_k.
  const std::vector<std::uint32_t>& frobenius_matrix() const noexcept { return frob_; }

 private:
  enum class TermKind : std::uint8_t { Zero, Scalar, General };
  struct ReductionTerm {
    std::size_t index;
    TermKind kind;
    std::uint32_t scalar;  // negated prime scalar when kind == Scalar
    Coords value;          // negated base element when kind == General
  };

  void build_frobenius();
  Coords apply_frobenius_once(const Coords& a) const;

  PrimeModulus p_;
  CtxPtr base_;
  Poly modulus_;
  CtxKind kind_;
  std::size_t rel_degree_ = 1;
  std::size_t abs_degree_ = 1;
  std::size_t base_abs_ = 1;
  std::size_t scratch_words_ = 0;
  std::vector<ReductionTerm> reduction_;
  std::vector<std::uint32_t> frob_;
};

/// Value type: an element together with the context it lives in.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(CtxPtr ctx, Coords coords);

  static FieldElement zero(const CtxPtr& ctx) { return {ctx, ctx->zero()}; }
  static FieldElement one(const CtxPtr& ctx) { return {ctx, ctx->one()}; }
  static FieldElement from_prime(const CtxPtr& ctx, std::int64_t v);
  static FieldElement generator(const CtxPtr& ctx) { return {ctx, ctx->generator()}; }

  const CtxPtr& ctx() const noexcept { return ctx_; }
  const Coords& coords() const noexcept { return coords_; }
  bool is_zero() const { return ctx_->is_zero(coords_); }
  bool in_prime_field() const { return ctx_->in_prime_field(coords_); }
  /// Coefficient i of the residue polynomial as an element of the base.
  FieldElement coefficient(std::size_t i) const;
  /// Lift a base-field element into `ctx`.
  static FieldElement embed(const CtxPtr& ctx, const FieldElement& base_elem);

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator-() const { return {ctx_, ctx_->neg(coords_)}; }
  FieldElement scaled(std::uint32_t s) const { return {ctx_, ctx_->scale(coords_, s)}; }
  FieldElement pow(std::uint64_t e) const { return {ctx_, ctx_->pow(coords_, e)}; }

  /// Equality is only meaningful within one context.
  friend bool operator==(const FieldElement& a, const FieldElement& b);
  /// Canonical ordering: lexicographic on flattened coordinates.
  friend std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b);

  std::string to_string() const;

 private:
  CtxPtr ctx_;
  Coords coords_;
};

void require_same_ctx(const FieldElement& a, const FieldElement& b);

FieldElement ext_mul(const FieldElement& a, const FieldElement& b);
FieldElement ext_inv(const FieldElement& a);
FieldElement frobenius(const FieldElement& a, std::uint64_t k);
/// Trace down to the prime field, computed as nested relative traces.
FpScalar trace_to_prime(const FieldElement& a);
/// Trace to the immediate base, as the trace of multiplication-by-a.
FieldElement relative_trace(const FieldElement& a);
/// Sum of a^(p^(i*step)) for 0 <= i < abs_degree/step. Throws BadStep.
FieldElement relative_conjugate_sum(const FieldElement& a, std::size_t step);

}  // namespace nbtower
