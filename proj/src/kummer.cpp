#include "nbtower/kummer.hpp"

#include <limits>
#include <numeric>
#include <string>

#include "nbtower/artin_schreier.hpp"
#include "nbtower/linalg.hpp"

namespace nbtower {

namespace {

constexpr std::uint64_t kMaxBaseSize = 1ull << 32;

std::uint64_t checked_pow(std::uint64_t base, std::uint32_t e, std::uint64_t limit) {
  std::uint64_t v = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    if (v > limit / base) throw Error(ErrorCode::ScaleExceeded, "power exceeds the desk-scale bound");
    v *= base;
  }
  return v;
}

// Element with index `code` in base-p digits, coordinate 0 least significant.
FieldElement element_from_index(const CtxPtr& ctx, std::uint64_t code) {
  Coords c(ctx->abs_degree(), 0);
  for (auto& v : c) {
    v = static_cast<std::uint32_t>(code % ctx->prime().value());
    code /= ctx->prime().value();
  }
  return {ctx, std::move(c)};
}

}  // namespace

std::uint64_t KummerParams::q_pow(std::uint32_t e) const { return checked_pow(q, e, kMaxBaseSize); }

std::uint64_t KummerParams::base_size() const { return checked_pow(p, l, kMaxBaseSize); }

KummerParams kummer_params(std::uint32_t p, std::uint32_t q, std::uint32_t l, std::uint32_t s) {
  PrimeModulus pm(p);
  if (!is_prime(q)) throw Error(ErrorCode::NotPrime, "q must be prime, got " + std::to_string(q));
  if (q == p) throw Error(ErrorCode::BadInput, "q must differ from p");
  if (l < 1) throw Error(ErrorCode::BadInput, "l must be positive");
  KummerParams k{p, q, l, 0, 0, s};
  std::uint64_t order = k.base_size() - 1;
  if (order % q != 0)
    throw Error(ErrorCode::NotDividing,
                std::to_string(q) + " does not divide " + std::to_string(p) + "^" + std::to_string(l) + " - 1");
  while (order % q == 0) {
    order /= q;
    ++k.r;
  }
  k.m = order;
  if (s < 1 || s > k.r)
    throw Error(ErrorCode::BadInput, "s must satisfy 1 <= s <= r = " + std::to_string(k.r));
  return k;
}

CtxPtr kummer_base_field(std::uint32_t p, std::uint32_t l) {
  CtxPtr fp = FieldCtx::prime_field(PrimeModulus(p));
  if (l == 1) return fp;
  const std::uint64_t count = checked_pow(p, l, kMaxBaseSize);
  // Monic polynomials of degree l, lower coefficients enumerated in order.
  for (std::uint64_t code = 0; code < count; ++code) {
    std::vector<std::int64_t> coeffs(l + 1, 0);
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < l; ++i) {
      coeffs[i] = static_cast<std::int64_t>(c % p);
      c /= p;
    }
    coeffs[l] = 1;
    Poly f = Poly::from_ints(fp, coeffs);
    if (coeffs[0] != 0 && oracle::is_irreducible_bruteforce(f, std::numeric_limits<std::size_t>::max()))
      return FieldCtx::extension(fp, f);
  }
  throw Error(ErrorCode::ConstructionFailure, "no irreducible polynomial of degree " + std::to_string(l));
}

FieldElement find_xi(const CtxPtr& base, std::uint32_t q, std::uint32_t r) {
  if (base->log2_size() > 32) throw Error(ErrorCode::ScaleExceeded, "base field too large for root search");
  const std::uint64_t size = checked_pow(base->prime().value(), static_cast<std::uint32_t>(base->abs_degree()),
                                         kMaxBaseSize);
  std::uint64_t qr = 1;
  for (std::uint32_t i = 0; i < r; ++i) qr *= q;
  if (r == 0 || (size - 1) % qr != 0)
    throw Error(ErrorCode::NoSuchRoot, "no element of order " + std::to_string(qr) + " in a field of size " +
                                           std::to_string(size));
  const FieldElement one = FieldElement::one(base);
  // Any element of exact order q^r generates all of them as its powers with
  // exponent prime to q; the canonical choice is the smallest of those.
  for (std::uint64_t code = 1; code < size; ++code) {
    FieldElement w = element_from_index(base, code).pow((size - 1) / qr);
    if (w.pow(qr / q) == one) continue;
    FieldElement best = w;
    FieldElement power = w;
    for (std::uint64_t j = 2; j < qr; ++j) {
      power = power * w;
      if (j % q != 0 && power < best) best = power;
    }
    return best;
  }
  throw Error(ErrorCode::NoSuchRoot, "no element of order " + std::to_string(qr));
}

KummerLevel kummer_extend(const CtxPtr& base, const KummerParams& params, const FieldElement& xi,
                          const FieldElement& b) {
  if (xi.ctx().get() != base.get() || b.ctx().get() != base.get())
    throw Error(ErrorCode::CtxMismatch, "xi and b must belong to the base field");
  if (base->prime().value() != params.p || base->abs_degree() != params.l)
    throw Error(ErrorCode::BadInput, "base field does not have p^l elements");
  const std::uint64_t qs = params.degree();
  if (qs * base->abs_degree() > max_degree())
    throw Error(ErrorCode::ScaleExceeded, "extension degree exceeds the desk-scale bound");
  const FieldElement one = FieldElement::one(base);
  if (!(xi.pow(params.q_pow(params.r)) == one) || xi.pow(params.q_pow(params.r - 1)) == one)
    throw Error(ErrorCode::BadInput, "xi is not a primitive q^r-th root of unity");
  if (b.is_zero() || b.pow(qs) == xi) throw Error(ErrorCode::BadB, "b must be nonzero with b^(q^s) != xi");

  std::vector<Coords> coeffs(qs + 1, base->zero());
  coeffs[0] = base->neg(xi.coords());
  coeffs[qs] = base->one();
  Poly modulus(base, std::move(coeffs));
  if (qs * base->abs_degree() <= max_degree() && !oracle::is_irreducible_bruteforce(modulus))
    throw Error(ErrorCode::ConstructionFailure, "x^(q^s) - xi is reducible: " + modulus.to_string());
  CtxPtr e = FieldCtx::extension(base, modulus,
                                 KummerKind{xi.coords(), params.q, params.s});

  KummerLevel level;
  level.params = params;
  level.ctx = e;
  level.xi = xi;
  level.zeta = xi.pow(params.m * params.q_pow(params.r - params.s));
  level.b = b;
  level.alpha = FieldElement::generator(e);
  level.gamma = ext_inv(level.alpha - FieldElement::embed(e, b));
  auto report = verify_kummer_level(level);
  if (!report.ok()) throw Error(ErrorCode::ConstructionFailure, report.summary());
  return level;
}

FieldElement conj_sum(const KummerLevel& level) {
  const std::uint64_t qs = level.params.degree();
  FieldElement denom = level.b.pow(qs) - level.xi;
  FieldElement num = level.b.pow(qs - 1).scaled(static_cast<std::uint32_t>(qs % level.params.p));
  return -(num * ext_inv(denom));
}

MultTable kummer_table(const KummerLevel& level) {
  const auto& k = *level.xi.ctx();
  const std::uint64_t qs = level.params.degree();
  MultTable t;
  t.generator = level.gamma;
  t.step = level.params.l;
  t.conjugates = qs;
  t.coefficient_field = CoefficientField::Base;
  const FieldElement one = FieldElement::one(level.xi.ctx());
  const FieldElement b_inv = ext_inv(level.b);
  FieldElement zeta_i = one;
  FieldElement sum_c = FieldElement::zero(level.xi.ctx());
  std::vector<SparseTerm> sq;
  for (std::uint64_t i = 1; i < qs; ++i) {
    zeta_i = zeta_i * level.zeta;
    FieldElement c = ext_inv(zeta_i - one) * b_inv;
    FieldElement cz = c * zeta_i;
    t.rows.push_back(make_row(k, k.zero(), {{0, c.coords()}, {i, (-cz).coords()}}));
    sum_c = sum_c + c;
    sq.push_back({i, cz.coords()});
  }
  sq.push_back({0, (conj_sum(level) - sum_c).coords()});
  t.square_row = make_row(k, k.zero(), std::move(sq));
  bool prime = true;
  for (std::size_t i = 0; i < qs; ++i)
    for (const auto& term : t.row(i).terms) prime = prime && k.in_prime_field(term.coeff);
  if (prime) t.coefficient_field = CoefficientField::Prime;
  return t;
}

bool kummer_normality(const KummerLevel& level) {
  const std::size_t qs = level.params.degree();
  auto conj = conjugates(level.gamma, level.params.l);
  if (rank_over_base(conj) != qs) return false;
  std::vector<FieldElement> powers;
  FieldElement alpha_inv = ext_inv(level.alpha);
  FieldElement power = FieldElement::one(level.ctx);
  for (std::size_t j = 0; j < qs; ++j) {
    powers.push_back(power);
    power = power * alpha_inv;
  }
  if (rank_over_base(powers) != qs) return false;
  std::vector<FieldElement> both = conj;
  both.insert(both.end(), powers.begin(), powers.end());
  return rank_over_base(both) == qs;
}

VerificationReport verify_kummer_level(const KummerLevel& level) {
  VerificationReport r;
  const auto& e = level.ctx;
  const auto& k = level.xi.ctx();
  const std::uint64_t qs = level.params.degree();
  const std::string where = "kummer p=" + std::to_string(level.params.p) + " q=" + std::to_string(level.params.q) +
                            " s=" + std::to_string(level.params.s);
  const FieldElement one = FieldElement::one(k);
  r.check(level.xi.pow(level.params.q_pow(level.params.r)) == one, "xi^(q^r) = 1", where);
  r.check(!(level.xi.pow(level.params.q_pow(level.params.r - 1)) == one), "xi^(q^(r-1)) != 1", where);
  r.check(!(level.zeta == one), "zeta != 1", where);
  r.check(level.zeta.pow(qs) == one, "zeta^(q^s) = 1", where);
  r.check(!(level.zeta.pow(qs / level.params.q) == one), "zeta has order exactly q^s", where);
  r.check(!level.b.is_zero() && !(level.b.pow(qs) == level.xi), "b != 0 and b^(q^s) != xi", where);

  const FieldElement b_e = FieldElement::embed(e, level.b);
  const FieldElement beta = level.alpha - b_e;
  r.check((beta * level.gamma) == FieldElement::one(e), "gamma = (alpha - b)^-1", where);
  FieldElement zeta_i = one;
  for (std::uint64_t i = 0; i < qs; ++i) {
    const FieldElement z = FieldElement::embed(e, zeta_i);
    const std::uint64_t k_pow = i * level.params.l;
    FieldElement lhs = frobenius(level.alpha, k_pow);
    r.check(lhs == z * level.alpha, "alpha^(p^(il)) = zeta^i alpha", where + " i=" + std::to_string(i),
            (z * level.alpha).to_string(), lhs.to_string());
    FieldElement blhs = frobenius(beta, k_pow) - z * beta;
    FieldElement brhs = (z - FieldElement::one(e)) * b_e;
    r.check(blhs == brhs, "beta^(p^(il)) - zeta^i beta = (zeta^i - 1) b", where + " i=" + std::to_string(i),
            brhs.to_string(), blhs.to_string());
    zeta_i = zeta_i * level.zeta;
  }
  FieldElement direct = relative_conjugate_sum(level.gamma, level.params.l);
  FieldElement closed = FieldElement::embed(e, conj_sum(level));
  r.check(direct == closed, "conjugate sum closed form", where, closed.to_string(), direct.to_string());
  return r;
}

}  // namespace nbtower
