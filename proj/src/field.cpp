#include "nbtower/field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nbtower {

struct FieldCtx::Private {
  explicit Private() = default;
};

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(CtxPtr field, std::vector<Coords> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_)
    if (!field_ || c.size() != field_->abs_degree())
      throw Error(ErrorCode::BadInput, "polynomial coefficient has wrong width");
  trim();
}

Poly Poly::constant(CtxPtr field, Coords c) { return Poly(std::move(field), {std::move(c)}); }

Poly Poly::monomial(CtxPtr field, Coords c, std::size_t degree) {
  std::vector<Coords> coeffs(degree + 1, field->zero());
  coeffs[degree] = std::move(c);
  return Poly(std::move(field), std::move(coeffs));
}

Poly Poly::x(CtxPtr field) {
  auto one = field->one();
  return monomial(std::move(field), std::move(one), 1);
}

Poly Poly::from_ints(CtxPtr field, const std::vector<std::int64_t>& coeffs) {
  std::vector<Coords> cs;
  cs.reserve(coeffs.size());
  for (auto v : coeffs) cs.push_back(field->from_prime(field->prime().from_int(v)));
  return Poly(std::move(field), std::move(cs));
}

Coords Poly::coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : field_->zero(); }

bool Poly::is_monic() const { return !coeffs_.empty() && coeffs_.back() == field_->one(); }

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(field_->inv(coeffs_.back()));
}

void Poly::trim() {
  while (!coeffs_.empty() && field_->is_zero(coeffs_.back())) coeffs_.pop_back();
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Coords> out(std::max(coeffs_.size(), o.coeffs_.size()), field_->zero());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = field_->add(coeff(i), o.coeff(i));
  return Poly(field_, std::move(out));
}

Poly Poly::operator-(const Poly& o) const {
  std::vector<Coords> out(std::max(coeffs_.size(), o.coeffs_.size()), field_->zero());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = field_->sub(coeff(i), o.coeff(i));
  return Poly(field_, std::move(out));
}

Poly Poly::operator-() const { return Poly::zero(field_) - *this; }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly::zero(field_);
  std::vector<Coords> out(coeffs_.size() + o.coeffs_.size() - 1, field_->zero());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (field_->is_zero(coeffs_[i])) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      out[i + j] = field_->add(out[i + j], field_->mul(coeffs_[i], o.coeffs_[j]));
  }
  return Poly(field_, std::move(out));
}

Poly Poly::scaled(const Coords& c) const {
  std::vector<Coords> out;
  out.reserve(coeffs_.size());
  for (const auto& a : coeffs_) out.push_back(field_->mul(a, c));
  return Poly(field_, std::move(out));
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.coeffs_.size() != b.coeffs_.size()) return false;
  if (a.is_zero()) return true;
  return a.field_->prime() == b.field_->prime() && a.coeffs_ == b.coeffs_;
}

std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const auto& c = coeffs_[i];
    if (field_->is_zero(c)) continue;
    if (!first) os << " + ";
    first = false;
    bool unit = c == field_->one();
    if (!unit || i == 0) {
      if (field_->is_prime_field()) {
        os << c[0];
      } else {
        os << FieldElement(field_, c).to_string();
      }
    }
    if (i > 0) {
      if (!unit) os << "*";
      os << "x";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

PolyDivision divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(ErrorCode::ZeroInverse, "polynomial division by zero");
  const auto& f = b.field();
  if (a.degree() < b.degree()) return {Poly::zero(f), a};
  std::vector<Coords> rem = a.coeffs();
  std::vector<Coords> quot(a.degree() - b.degree() + 1, f->zero());
  Coords lead_inv = f->inv(b.coeffs().back());
  const std::size_t db = static_cast<std::size_t>(b.degree());
  for (std::size_t k = rem.size(); k-- > db;) {
    if (f->is_zero(rem[k])) continue;
    Coords q = f->mul(rem[k], lead_inv);
    for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] = f->sub(rem[k - db + j], f->mul(q, b.coeffs()[j]));
    quot[k - db] = std::move(q);
  }
  rem.resize(db);
  return {Poly(f, std::move(quot)), Poly(f, std::move(rem))};
}

Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).remainder; }

Poly gcd(const Poly& a, const Poly& b) {
  Poly r0 = a, r1 = b;
  while (!r1.is_zero()) {
    Poly r2 = r0 % r1;
    r0 = std::move(r1);
    r1 = std::move(r2);
  }
  return r0.monic();
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& m) {
  Poly result = Poly::constant(m.field(), m.field()->one()) % m;
  Poly b = base % m;
  while (e) {
    if (e & 1) result = (result * b) % m;
    e >>= 1;
    if (e) b = (b * b) % m;
  }
  return result;
}

Poly compose(const Poly& f, const Poly& g) {
  Poly result = Poly::zero(f.field());
  for (std::size_t i = f.coeffs().size(); i-- > 0;)
    result = result * g + Poly::constant(f.field(), f.coeffs()[i]);
  return result;
}

Coords evaluate(const Poly& f, const Coords& point) {
  const auto& k = f.field();
  Coords acc = k->zero();
  for (std::size_t i = f.coeffs().size(); i-- > 0;) acc = k->add(k->mul(acc, point), f.coeffs()[i]);
  return acc;
}

// ---------------------------------------------------------------------------
// FieldCtx

FieldCtx::FieldCtx(const Private&, PrimeModulus p, CtxPtr base, Poly modulus, CtxKind kind)
    : p_(p), base_(std::move(base)), modulus_(std::move(modulus)), kind_(std::move(kind)) {
  if (!base_) return;
  rel_degree_ = static_cast<std::size_t>(modulus_.degree());
  base_abs_ = base_->abs_degree();
  abs_degree_ = rel_degree_ * base_abs_;
  const std::size_t d = rel_degree_, w = base_abs_;
  scratch_words_ = (2 * d - 1) * w + 3 * w + base_->scratch_words();
  for (std::size_t j = 0; j < d; ++j) {
    const Coords& c = modulus_.coeffs()[j];
    if (base_->is_zero(c)) continue;
    Coords neg = base_->neg(c);
    if (base_->in_prime_field(neg))
      reduction_.push_back({j, TermKind::Scalar, neg[0], {}});
    else
      reduction_.push_back({j, TermKind::General, 0, std::move(neg)});
  }
}

CtxPtr FieldCtx::prime_field(PrimeModulus p) {
  auto ctx = std::make_shared<FieldCtx>(Private{}, p, nullptr, Poly{}, PrimeKind{});
  ctx->frob_ = {1};
  return ctx;
}

CtxPtr FieldCtx::extension(CtxPtr base, Poly modulus, CtxKind kind) {
  if (!base) throw Error(ErrorCode::BadInput, "extension needs a base field");
  if (modulus.field().get() != base.get())
    throw Error(ErrorCode::CtxMismatch, "modulus is not a polynomial over the given base");
  if (modulus.degree() < 1 || !modulus.is_monic())
    throw Error(ErrorCode::BadInput, "modulus must be monic of degree >= 1");
  PrimeModulus p = base->prime();
  auto ctx = std::make_shared<FieldCtx>(Private{}, p, std::move(base), std::move(modulus), std::move(kind));
  ctx->build_frobenius();
  return ctx;
}

CtxPtr FieldCtx::prime_ctx() const {
  const FieldCtx* c = this;
  while (c->base_) c = c->base_.get();
  return c->shared_from_this();
}

std::size_t FieldCtx::depth() const noexcept {
  std::size_t n = 0;
  for (const FieldCtx* c = this; c->base_; c = c->base_.get()) ++n;
  return n;
}

double FieldCtx::log2_size() const { return static_cast<double>(abs_degree_) * std::log2(p_.value()); }

Coords FieldCtx::one() const { return from_prime(1); }

Coords FieldCtx::from_prime(std::uint32_t v) const {
  Coords c(abs_degree_, 0);
  c[0] = v % p_.value();
  return c;
}

Coords FieldCtx::generator() const {
  if (!base_) return one();
  if (rel_degree_ == 1) return neg(embed_base(modulus_.coeffs()[0]));
  Coords c(abs_degree_, 0);
  c[base_abs_] = 1;
  return c;
}

bool FieldCtx::is_zero(const Coords& a) const {
  return std::all_of(a.begin(), a.end(), [](std::uint32_t v) { return v == 0; });
}

bool FieldCtx::in_prime_field(const Coords& a) const {
  return std::all_of(a.begin() + 1, a.end(), [](std::uint32_t v) { return v == 0; });
}

Coords FieldCtx::add(const Coords& a, const Coords& b) const {
  Coords r(abs_degree_);
  for (std::size_t i = 0; i < abs_degree_; ++i) r[i] = p_.add(a[i], b[i]);
  return r;
}

Coords FieldCtx::sub(const Coords& a, const Coords& b) const {
  Coords r(abs_degree_);
  for (std::size_t i = 0; i < abs_degree_; ++i) r[i] = p_.sub(a[i], b[i]);
  return r;
}

Coords FieldCtx::neg(const Coords& a) const {
  Coords r(abs_degree_);
  for (std::size_t i = 0; i < abs_degree_; ++i) r[i] = p_.neg(a[i]);
  return r;
}

Coords FieldCtx::scale(const Coords& a, std::uint32_t s) const {
  Coords r(abs_degree_);
  s %= p_.value();
  for (std::size_t i = 0; i < abs_degree_; ++i) r[i] = p_.mul(a[i], s);
  return r;
}

namespace {

void add_into(const PrimeModulus& p, std::uint32_t* dst, const std::uint32_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = p.add(dst[i], src[i]);
}

void sub_into(const PrimeModulus& p, std::uint32_t* dst, const std::uint32_t* src, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = p.sub(dst[i], src[i]);
}

}  // namespace

void FieldCtx::mul_into(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out,
                        std::uint32_t* scratch) const {
  if (!base_) {
    out[0] = p_.mul(a[0], b[0]);
    return;
  }
  const std::size_t d = rel_degree_, w = base_abs_;
  const std::size_t plen = (2 * d - 1) * w;
  std::uint32_t* prod = scratch;
  std::uint32_t* tmp = prod + plen;
  std::uint32_t* sa = tmp + w;
  std::uint32_t* sb = sa + w;
  std::uint32_t* sub = sb + w;

  if (w == 1) {
    // Base is the prime field: plain convolution with 64-bit accumulators.
    const std::uint64_t pv = p_.value();
    for (std::size_t k = 0; k < 2 * d - 1; ++k) {
      std::uint64_t acc = 0;
      std::size_t lo = k >= d ? k - d + 1 : 0, hi = std::min(k, d - 1);
      for (std::size_t i = lo; i <= hi; ++i) {
        acc += static_cast<std::uint64_t>(a[i]) * b[k - i];
        if (acc >= (1ull << 62)) acc %= pv;
      }
      prod[k] = static_cast<std::uint32_t>(acc % pv);
    }
  } else if (d == 2) {
    // Karatsuba: three base products instead of four.
    base_->mul_into(a, b, prod, sub);
    base_->mul_into(a + w, b + w, prod + 2 * w, sub);
    for (std::size_t i = 0; i < w; ++i) {
      sa[i] = p_.add(a[i], a[w + i]);
      sb[i] = p_.add(b[i], b[w + i]);
    }
    base_->mul_into(sa, sb, tmp, sub);
    sub_into(p_, tmp, prod, w);
    sub_into(p_, tmp, prod + 2 * w, w);
    std::copy(tmp, tmp + w, prod + w);
  } else {
    std::fill(prod, prod + plen, 0u);
    for (std::size_t i = 0; i < d; ++i) {
      const std::uint32_t* ai = a + i * w;
      if (std::all_of(ai, ai + w, [](std::uint32_t v) { return v == 0; })) continue;
      for (std::size_t j = 0; j < d; ++j) {
        base_->mul_into(ai, b + j * w, tmp, sub);
        add_into(p_, prod + (i + j) * w, tmp, w);
      }
    }
  }

  // x^d = -sum_j f_j x^j, applied from the top coefficient down.
  for (std::size_t k = 2 * d - 1; k-- > d;) {
    const std::uint32_t* c = prod + k * w;
    if (std::all_of(c, c + w, [](std::uint32_t v) { return v == 0; })) continue;
    for (const auto& term : reduction_) {
      std::uint32_t* target = prod + (k - d + term.index) * w;
      if (term.kind == TermKind::Scalar) {
        for (std::size_t i = 0; i < w; ++i) target[i] = p_.add(target[i], p_.mul(c[i], term.scalar));
      } else {
        base_->mul_into(c, term.value.data(), tmp, sub);
        add_into(p_, target, tmp, w);
      }
    }
  }
  std::copy(prod, prod + d * w, out);
}

Coords FieldCtx::mul(const Coords& a, const Coords& b) const {
  Coords out(abs_degree_);
  std::vector<std::uint32_t> scratch(scratch_words_);
  mul_into(a.data(), b.data(), out.data(), scratch.data());
  return out;
}

Coords FieldCtx::inv(const Coords& a) const {
  if (is_zero(a)) throw Error(ErrorCode::ZeroInverse, "zero has no inverse");
  if (!base_) return {p_.inv(a[0])};
  // Extended Euclid on (modulus, a) over the base.
  std::vector<Coords> ac(rel_degree_);
  for (std::size_t i = 0; i < rel_degree_; ++i) ac[i] = coefficient(a, i);
  Poly r0 = modulus_, r1(base_, std::move(ac));
  Poly s0 = Poly::zero(base_), s1 = Poly::constant(base_, base_->one());
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  if (r0.degree() != 0)
    throw Error(ErrorCode::ConstructionFailure, "element shares a factor with a reducible modulus");
  Poly inv_poly = (s0.scaled(base_->inv(r0.coeffs()[0]))) % modulus_;
  Coords out(abs_degree_, 0);
  for (std::size_t i = 0; i < inv_poly.coeffs().size(); ++i)
    std::copy(inv_poly.coeffs()[i].begin(), inv_poly.coeffs()[i].end(), out.begin() + i * base_abs_);
  return out;
}

Coords FieldCtx::pow(const Coords& a, std::uint64_t e) const {
  Coords result = one();
  Coords b = a;
  std::vector<std::uint32_t> scratch(scratch_words_);
  while (e) {
    if (e & 1) mul_into(result.data(), b.data(), result.data(), scratch.data());
    e >>= 1;
    if (e) mul_into(b.data(), b.data(), b.data(), scratch.data());
  }
  return result;
}

Coords FieldCtx::apply_frobenius_once(const Coords& a) const {
  const std::size_t n = abs_degree_;
  const std::uint64_t pv = p_.value();
  std::vector<std::uint64_t> acc(n, 0);
  for (std::size_t c = 0; c < n; ++c) {
    if (a[c] == 0) continue;
    const std::uint32_t* col = frob_.data() + c * n;
    for (std::size_t r = 0; r < n; ++r) acc[r] += static_cast<std::uint64_t>(col[r]) * a[c];
  }
  Coords out(n);
  for (std::size_t r = 0; r < n; ++r) out[r] = static_cast<std::uint32_t>(acc[r] % pv);
  return out;
}

Coords FieldCtx::frobenius(const Coords& a, std::uint64_t k) const {
  k %= abs_degree_;
  Coords r = a;
  for (std::uint64_t i = 0; i < k; ++i) r = apply_frobenius_once(r);
  return r;
}

void FieldCtx::build_frobenius() {
  // (w_j x^i)^p = w_j^p (x^p)^i, so each column is one product.
  const std::size_t d = rel_degree_, w = base_abs_, n = abs_degree_;
  Coords xp = pow(generator(), p_.value());
  std::vector<Coords> xp_pows(d);
  xp_pows[0] = one();
  for (std::size_t i = 1; i < d; ++i) xp_pows[i] = mul(xp_pows[i - 1], xp);
  const auto& base_frob = base_->frobenius_matrix();
  frob_.assign(n * n, 0);
  for (std::size_t j = 0; j < w; ++j) {
    Coords bj(base_frob.begin() + j * w, base_frob.begin() + (j + 1) * w);
    Coords lifted = embed_base(bj);
    for (std::size_t i = 0; i < d; ++i) {
      Coords col = mul(lifted, xp_pows[i]);
      std::copy(col.begin(), col.end(), frob_.begin() + (i * w + j) * n);
    }
  }
}

Coords FieldCtx::embed_base(const Coords& base_elem) const {
  Coords c(abs_degree_, 0);
  std::copy(base_elem.begin(), base_elem.end(), c.begin());
  return c;
}

Coords FieldCtx::coefficient(const Coords& a, std::size_t i) const {
  return Coords(a.begin() + i * base_abs_, a.begin() + (i + 1) * base_abs_);
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(CtxPtr ctx, Coords coords) : ctx_(std::move(ctx)), coords_(std::move(coords)) {
  if (!ctx_ || coords_.size() != ctx_->abs_degree())
    throw Error(ErrorCode::BadInput, "coordinate vector does not match the field degree");
  const std::uint32_t p = ctx_->prime().value();
  for (auto v : coords_)
    if (v >= p) throw Error(ErrorCode::BadInput, "coordinate out of range");
}

FieldElement FieldElement::from_prime(const CtxPtr& ctx, std::int64_t v) {
  return {ctx, ctx->from_prime(ctx->prime().from_int(v))};
}

FieldElement FieldElement::coefficient(std::size_t i) const {
  if (ctx_->is_prime_field()) throw Error(ErrorCode::BadInput, "prime field has no base coefficients");
  return {ctx_->base(), ctx_->coefficient(coords_, i)};
}

FieldElement FieldElement::embed(const CtxPtr& ctx, const FieldElement& base_elem) {
  if (ctx->base().get() != base_elem.ctx().get())
    throw Error(ErrorCode::CtxMismatch, "element does not belong to the base of the target field");
  return {ctx, ctx->embed_base(base_elem.coords())};
}

void require_same_ctx(const FieldElement& a, const FieldElement& b) {
  if (a.ctx().get() != b.ctx().get())
    throw Error(ErrorCode::CtxMismatch, "elements belong to different fields");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same_ctx(*this, o);
  return {ctx_, ctx_->add(coords_, o.coords_)};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  require_same_ctx(*this, o);
  return {ctx_, ctx_->sub(coords_, o.coords_)};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same_ctx(*this, o);
  return {ctx_, ctx_->mul(coords_, o.coords_)};
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  return a.ctx_.get() == b.ctx_.get() && a.coords_ == b.coords_;
}

std::strong_ordering operator<=>(const FieldElement& a, const FieldElement& b) {
  return a.coords_ <=> b.coords_;
}

std::string FieldElement::to_string() const {
  if (ctx_->is_prime_field()) return std::to_string(coords_[0]);
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? "," : "") << coords_[i];
  os << ")";
  return os.str();
}

FieldElement ext_mul(const FieldElement& a, const FieldElement& b) { return a * b; }

FieldElement ext_inv(const FieldElement& a) { return {a.ctx(), a.ctx()->inv(a.coords())}; }

FieldElement frobenius(const FieldElement& a, std::uint64_t k) { return {a.ctx(), a.ctx()->frobenius(a.coords(), k)}; }

FieldElement relative_trace(const FieldElement& a) {
  const auto& ctx = a.ctx();
  if (ctx->is_prime_field()) return a;
  // Diagonal of the multiplication-by-a matrix in the basis 1, x, ..., x^(d-1).
  FieldElement x = FieldElement::generator(ctx);
  FieldElement xi = FieldElement::one(ctx);
  Coords acc = ctx->base()->zero();
  for (std::size_t i = 0; i < ctx->rel_degree(); ++i) {
    acc = ctx->base()->add(acc, ctx->coefficient(ctx->mul(a.coords(), xi.coords()), i));
    xi = xi * x;
  }
  return {ctx->base(), std::move(acc)};
}

FpScalar trace_to_prime(const FieldElement& a) {
  FieldElement t = a;
  while (!t.ctx()->is_prime_field()) t = relative_trace(t);
  return {t.ctx()->prime(), t.coords()[0]};
}

FieldElement relative_conjugate_sum(const FieldElement& a, std::size_t step) {
  const std::size_t n = a.ctx()->abs_degree();
  if (step == 0 || n % step != 0)
    throw Error(ErrorCode::BadStep, "step " + std::to_string(step) + " does not divide " + std::to_string(n));
  FieldElement sum = a, conj = a;
  for (std::size_t i = 1; i < n / step; ++i) {
    conj = frobenius(conj, step);
    sum = sum + conj;
  }
  return sum;
}

}  // namespace nbtower
