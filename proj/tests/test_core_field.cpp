#include <random>

#include "doctest.h"
#include "nbtower/field.hpp"
#include "nbtower/linalg.hpp"
#include "support/helpers.hpp"
#include "support/naive_field.hpp"

using namespace nbtower;
using testing_support::Binary;
using testing_support::random_element;
using testing_support::random_nonzero;

TEST_CASE("prime field scalars") {
  PrimeModulus p7(7);
  CHECK(fp_inv(FpScalar(p7, 3)).value() == 5);
  CHECK(fp_inv(FpScalar(PrimeModulus(13), 1)).value() == 1);
  CHECK_THROWS_AS(fp_inv(FpScalar(PrimeModulus(5), 0)), Error);
  CHECK(FpScalar(p7, -1).value() == 6);
  CHECK((FpScalar(p7, 4) * FpScalar(p7, 5)).value() == 6);
  CHECK(is_prime(65521));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(4));
  try {
    PrimeModulus bad(4);
    FAIL("expected NotPrime");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotPrime);
  }
  CHECK_THROWS_AS(PrimeModulus(65537), Error);
}

TEST_CASE("F_4 worked values") {
  Binary t;
  const auto& b = t.beta;
  CHECK(t.f4->modulus() == Poly::from_ints(t.f2, {1, 1, 1}));
  CHECK(ext_mul(b, b + t.one) == t.one);
  CHECK(ext_mul(b, t.one) == b);
  CHECK(ext_mul(b, FieldElement::zero(t.f4)).is_zero());
  CHECK(ext_inv(b) == b + t.one);
  CHECK(ext_inv(t.one) == t.one);
  try {
    ext_inv(FieldElement::zero(t.f4));
    FAIL("expected ZeroInverse");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroInverse);
  }
  CHECK(frobenius(b, 1) == b + t.one);
  CHECK(frobenius(b, 0) == b);
  CHECK(frobenius(b, 2) == b);
  CHECK(trace_to_prime(b).value() == 1);
  CHECK(trace_to_prime(t.one).value() == 0);
  CHECK(trace_to_prime(FieldElement::zero(t.f4)).value() == 0);
}

TEST_CASE("relative conjugate sums") {
  Binary t;
  FieldElement beta2 = FieldElement::generator(t.f16);
  FieldElement gamma2 = ext_inv(beta2);
  // x^2 + x + (beta + 1) over F_4
  CHECK(t.f16->modulus() == Poly(t.f4, {(t.beta + t.one).coords(), t.f4->one(), t.f4->one()}));
  CHECK(relative_conjugate_sum(gamma2, 2) == FieldElement::embed(t.f16, t.beta));
  CHECK(relative_conjugate_sum(gamma2, 4) == gamma2);
  CHECK(relative_conjugate_sum(FieldElement::zero(t.f16), 2).is_zero());
  CHECK_THROWS_AS(relative_conjugate_sum(gamma2, 3), Error);
}

TEST_CASE("minimal polynomials and rank") {
  Binary t;
  auto x2x1 = Poly::from_ints(t.f2, {1, 1, 1});
  CHECK(min_poly(t.beta) == x2x1);
  CHECK(min_poly(t.one) == Poly::from_ints(t.f2, {1, 1}));
  CHECK(min_poly(t.beta + t.one) == x2x1);
  std::vector<FieldElement> two{t.beta, t.beta + t.one};
  CHECK(rank_over_prime(two) == 2);
  std::vector<FieldElement> dup{t.one, t.one};
  CHECK(rank_over_prime(dup) == 1);
  CHECK(rank_over_prime(std::span<const FieldElement>{}) == 0);
}

TEST_CASE("context mismatch is rejected") {
  Binary t;
  FieldElement a = FieldElement::generator(t.f16);
  try {
    ext_mul(a, t.beta);
    FAIL("expected CtxMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CtxMismatch);
  }
  CHECK_THROWS_AS(FieldElement(t.f4, Coords{0, 2}), Error);
  CHECK_THROWS_AS(FieldElement(t.f4, Coords{0}), Error);
}

TEST_CASE("polynomial arithmetic") {
  auto f7 = FieldCtx::prime_field(PrimeModulus(7));
  auto f = Poly::from_ints(f7, {1, 2, 3, 4});
  auto g = Poly::from_ints(f7, {5, 0, 1});
  auto qr = divmod(f, g);
  CHECK(qr.quotient * g + qr.remainder == f);
  CHECK(qr.remainder.degree() < g.degree());
  CHECK(gcd(f * g, g * g) == g.monic());
  CHECK(Poly::zero(f7).degree() == -1);
  auto m = Poly::from_ints(f7, {-2, 0, 0, 1});
  // x^7 = x * (x^3)^2 = 4x mod x^3 - 2
  CHECK(powmod(Poly::x(f7), 7, m) == Poly::from_ints(f7, {0, 4}));
  CHECK(compose(g, Poly::from_ints(f7, {1, 1})) == Poly::from_ints(f7, {6, 2, 1}));
  CHECK(evaluate(f, f7->from_prime(2)) == f7->from_prime((1 + 4 + 12 + 32) % 7));
}

TEST_CASE("canonical ordering is lexicographic on coordinates") {
  Binary t;
  FieldElement zero = FieldElement::zero(t.f4);
  // coordinates are lowest degree first: 0 = (0,0), beta = (0,1), 1 = (1,0)
  CHECK(zero < t.beta);
  CHECK(t.beta < t.one);
  CHECK(t.one < t.beta + t.one);
}

// Field axioms and agreement with the reference arithmetic on every level of
// towers for p = 2, 3, 5.
TEST_CASE("tower arithmetic agrees with the reference field") {
  std::mt19937_64 rng(11);
  for (auto [p, levels] : {std::pair{2u, 5u}, std::pair{3u, 3u}, std::pair{5u, 2u}}) {
    TowerSpec spec = build_tower(PrimeModulus(p), levels);
    naive::Tower ref = naive::Tower::derive(p, levels);
    for (std::size_t k = 1; k <= levels; ++k) {
      CAPTURE(p);
      CAPTURE(k);
      const CtxPtr& ctx = spec.levels[k - 1].level.ctx;
      naive::Tower r = ref.truncated(k);
      CHECK(spec.levels[k - 1].level.alpha.coords() == r.alpha(k));
      for (int it = 0; it < 20; ++it) {
        auto a = random_element(ctx, rng), b = random_element(ctx, rng), c = random_element(ctx, rng);
        CHECK((a * b).coords() == r.mul(a.coords(), b.coords()));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(frobenius(a * b, 1) == frobenius(a, 1) * frobenius(b, 1));
        CHECK(frobenius(a, 1) == a.pow(p));
        CHECK(frobenius(a, ctx->abs_degree()) == a);
        CHECK((a - a).is_zero());
        if (!a.is_zero()) {
          CHECK(ext_inv(a).coords() == r.inv(a.coords()));
          CHECK((a * ext_inv(a)) == FieldElement::one(ctx));
        }
        // trace by direct summation of conjugates
        Coords sum = r.zero(), conj = a.coords();
        for (std::size_t i = 0; i < r.degree(); ++i) {
          sum = r.add(sum, conj);
          conj = r.frob(conj);
        }
        CHECK(sum == r.constant(trace_to_prime(a).value()));
        // flattening is linear
        CHECK((a + b).coords() == r.add(a.coords(), b.coords()));
        CHECK(a.scaled(2 % p).coords() == r.scale(a.coords(), 2 % p));
      }
    }
  }
}

TEST_CASE("mul_into allows aliasing and matches mul") {
  std::mt19937_64 rng(5);
  TowerSpec spec = build_tower(PrimeModulus(3), 3);
  const CtxPtr& ctx = spec.levels.back().level.ctx;
  std::vector<std::uint32_t> scratch(ctx->scratch_words());
  for (int it = 0; it < 50; ++it) {
    auto a = random_element(ctx, rng), b = random_element(ctx, rng);
    Coords x = a.coords();
    ctx->mul_into(x.data(), b.coords().data(), x.data(), scratch.data());
    CHECK(x == (a * b).coords());
  }
}

TEST_CASE("minimal polynomial vanishes at the element") {
  std::mt19937_64 rng(3);
  TowerSpec spec = build_tower(PrimeModulus(2), 4);
  const CtxPtr& ctx = spec.levels.back().level.ctx;
  for (int it = 0; it < 30; ++it) {
    auto a = random_nonzero(ctx, rng);
    Poly m = min_poly(a);
    CHECK(m.is_monic());
    CHECK(ctx->abs_degree() % static_cast<std::size_t>(m.degree()) == 0);
    // Horner in the field
    FieldElement acc = FieldElement::zero(ctx);
    for (int i = m.degree(); i >= 0; --i)
      acc = acc * a + FieldElement::from_prime(ctx, m.coeff(static_cast<std::size_t>(i))[0]);
    CHECK(acc.is_zero());
  }
}
