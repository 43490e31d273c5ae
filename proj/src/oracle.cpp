#include "nbtower/oracle.hpp"

#include <sstream>

#include "nbtower/artin_schreier.hpp"
#include "nbtower/linalg.hpp"

namespace nbtower {

bool VerificationReport::check(bool passed, std::string name, std::string input, std::string expected,
                               std::string actual) {
  ++checks_run;
  if (!passed) failures.push_back({std::move(name), std::move(input), std::move(expected), std::move(actual)});
  return passed;
}

void VerificationReport::merge(const VerificationReport& other) {
  checks_run += other.checks_run;
  failures.insert(failures.end(), other.failures.begin(), other.failures.end());
}

std::string VerificationReport::summary() const {
  std::ostringstream os;
  os << checks_run << " checks, " << failures.size() << " failures";
  for (const auto& f : failures)
    os << "\n  FAIL " << f.check << " [" << f.input << "] expected " << f.expected << ", got " << f.actual;
  return os.str();
}

namespace oracle {

namespace {

void require_step(const FieldElement& a, std::size_t step) {
  const std::size_t n = a.ctx()->abs_degree();
  if (step == 0 || n % step != 0)
    throw Error(ErrorCode::BadStep, "step " + std::to_string(step) + " does not divide " + std::to_string(n));
}

FieldElement pth_power_iterated(FieldElement a, std::size_t times) {
  const std::uint32_t p = a.ctx()->prime().value();
  for (std::size_t i = 0; i < times; ++i) a = a.pow(p);
  return a;
}

}  // namespace

std::vector<FieldElement> conjugates_by_powering(const FieldElement& a, std::size_t step) {
  require_step(a, step);
  std::vector<FieldElement> out{a};
  const std::size_t m = a.ctx()->abs_degree() / step;
  for (std::size_t i = 1; i < m; ++i) out.push_back(pth_power_iterated(out.back(), step));
  return out;
}

bool is_normal_bruteforce(const FieldElement& a, std::size_t step) {
  require_step(a, step);
  const auto& ctx = a.ctx();
  const std::size_t n = ctx->abs_degree();
  auto conj = conjugates_by_powering(a, step);
  // Prime-field basis of the subfield L = {x : x^(p^step) = x}, found as the
  // kernel of the powering map minus the identity.
  std::vector<FieldElement> basis;
  if (step == 1) {
    basis.push_back(FieldElement::one(ctx));
  } else {
    const auto& p = ctx->prime();
    std::vector<std::uint32_t> m(n * n);
    for (std::size_t k = 0; k < n; ++k) {
      Coords e(n, 0);
      e[k] = 1;
      Coords img = pth_power_iterated(FieldElement(ctx, e), step).coords();
      img[k] = p.sub(img[k], 1);
      std::copy(img.begin(), img.end(), m.begin() + k * n);
    }
    for (auto& v : kernel_mod_p(m, n, p)) basis.emplace_back(ctx, std::move(v));
  }
  if (basis.size() != step) return false;
  std::vector<FieldElement> span;
  for (const auto& w : basis)
    for (const auto& c : conj) span.push_back(w * c);
  return rank_over_prime(span) == n;
}

bool is_irreducible_bruteforce(const Poly& f, std::size_t bound) {
  if (f.degree() < 1) throw Error(ErrorCode::BadInput, "irreducibility needs a polynomial of degree >= 1");
  const auto& k = f.field();
  const std::size_t d = static_cast<std::size_t>(f.degree());
  if (d * k->abs_degree() > bound)
    throw Error(ErrorCode::ScaleExceeded, "degree " + std::to_string(d * k->abs_degree()) + " exceeds bound " +
                                              std::to_string(bound));
  if (d == 1) return true;
  const Poly g = f.monic();
  const Poly x = Poly::x(k);
  const std::uint32_t p = k->prime().value();
  Poly h = x % g;
  for (std::size_t deg = 1; deg <= d / 2; ++deg) {
    // h <- h^|K|, as abs_degree(K) successive p-th powers.
    for (std::size_t i = 0; i < k->abs_degree(); ++i) h = powmod(h, p, g);
    if (gcd(g, h - x).degree() > 0) return false;
  }
  return true;
}

Poly min_poly_via_conjugates(const FieldElement& a, std::size_t bound) {
  const auto& ctx = a.ctx();
  if (ctx->abs_degree() > bound)
    throw Error(ErrorCode::ScaleExceeded, "absolute degree exceeds the oracle bound");
  std::vector<FieldElement> distinct{a};
  for (FieldElement c = a.pow(ctx->prime().value()); !(c == a); c = c.pow(ctx->prime().value()))
    distinct.push_back(c);
  Poly product = Poly::constant(ctx, ctx->one());
  for (const auto& c : distinct)
    product = product * Poly(ctx, {ctx->neg(c.coords()), ctx->one()});
  std::vector<std::int64_t> ints;
  for (const auto& coeff : product.coeffs()) {
    if (!ctx->in_prime_field(coeff))
      throw Error(ErrorCode::ConstructionFailure, "conjugate product has a coefficient outside Z_p");
    ints.push_back(coeff[0]);
  }
  return Poly::from_ints(ctx->prime_ctx(), ints);
}

namespace {

// x^deg f(1/x) / f(0), the monic reciprocal polynomial.
Poly reciprocal(const Poly& f) {
  std::vector<Coords> rev(f.coeffs().rbegin(), f.coeffs().rend());
  return Poly(f.field(), std::move(rev)).monic();
}

}  // namespace

VerificationReport verify_reciprocal_relations(const ASLevel& level, const std::optional<Poly>& m_alpha_override,
                                               std::size_t bound) {
  VerificationReport report;
  const auto& e = level.ctx;
  if (e->abs_degree() > bound)
    throw Error(ErrorCode::ScaleExceeded, "absolute degree exceeds the oracle bound");
  const auto fp = e->prime_ctx();
  const auto& pm = e->prime();
  const std::uint32_t p = pm.value();
  const std::size_t n = e->base_abs_degree();

  Poly m_alpha = m_alpha_override ? *m_alpha_override : min_poly(level.alpha);
  report.check(m_alpha.degree() == static_cast<int>(n), "deg m_alpha = n", "level " + std::to_string(e->depth()),
               std::to_string(n), std::to_string(m_alpha.degree()));

  // x^p - x
  std::vector<std::int64_t> as_poly(p + 1, 0);
  as_poly[p] = 1;
  as_poly[1] = -1;
  Poly m_beta = compose(m_alpha, Poly::from_ints(fp, as_poly));
  Poly m_beta_direct = min_poly(level.beta);
  report.check(m_beta == m_beta_direct, "m_beta(x) = m_alpha(x^p - x)", "level " + std::to_string(e->depth()),
               m_beta_direct.to_string(), m_beta.to_string());

  Poly m_beta_inv = reciprocal(m_beta);
  Poly m_beta_inv_direct = min_poly(level.gamma);
  report.check(m_beta_inv == m_beta_inv_direct, "m_{beta^-1} = reciprocal of m_beta",
               "level " + std::to_string(e->depth()), m_beta_inv_direct.to_string(), m_beta_inv.to_string());

  Poly shift = Poly::from_ints(fp, {static_cast<std::int64_t>(level.b.value()), 1});
  Poly m_delta_inv = compose(m_beta_inv, shift);
  Poly m_delta_inv_direct = min_poly(level.delta_inv);
  report.check(m_delta_inv == m_delta_inv_direct, "m_{delta^-1}(x) = m_{beta^-1}(x + b)",
               "level " + std::to_string(e->depth()), m_delta_inv_direct.to_string(), m_delta_inv.to_string());

  Poly m_delta = reciprocal(m_delta_inv);
  Poly m_delta_direct = min_poly(level.delta);
  report.check(m_delta == m_delta_direct, "m_delta = reciprocal of m_{delta^-1}",
               "level " + std::to_string(e->depth()), m_delta_direct.to_string(), m_delta.to_string());

  const std::uint32_t x_coeff = m_delta_inv.coeff(1)[0];
  report.check(x_coeff != 0, "coefficient of x in m_{delta^-1} nonzero", "level " + std::to_string(e->depth()),
               "nonzero", std::to_string(x_coeff));

  if (n >= 2 && n % p == 0 && m_alpha.degree() == static_cast<int>(n)) {
    // a_0 [x] m_{delta^-1} = a_1 b^((n-1)p-1), with a_0 m_{delta^-1} taken as
    // the unnormalised reciprocal-shift of m_beta.
    const std::uint32_t a0 = m_alpha.coeff(0)[0];
    const std::uint32_t a1 = m_alpha.coeff(1)[0];
    const std::uint32_t lhs = pm.mul(a0, x_coeff);
    const std::uint32_t rhs = pm.mul(a1, pm.pow(level.b.value(), (n - 1) * p - 1));
    report.check(lhs == rhs, "a_0 [x] m_{delta^-1} = a_1 b^((n-1)p-1)", "level " + std::to_string(e->depth()),
                 std::to_string(rhs), std::to_string(lhs));
  }
  return report;
}

}  // namespace oracle

}  // namespace nbtower
