#include "doctest.h"
#include "nbtower/artin_schreier.hpp"
#include "nbtower/kummer.hpp"
#include "nbtower/linalg.hpp"
#include "nbtower/oracle.hpp"
#include "support/naive_field.hpp"

using namespace nbtower;

namespace {

KummerLevel make_level(std::uint32_t p, std::uint32_t q, std::uint32_t l, std::uint32_t s, std::int64_t b = 1) {
  KummerParams params = kummer_params(p, q, l, s);
  CtxPtr base = kummer_base_field(p, l);
  return kummer_extend(base, params, find_xi(base, q, params.r), FieldElement::from_prime(base, b));
}

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::BadInput;
}

Coords c1(std::uint32_t v) { return Coords{v}; }

}  // namespace

TEST_CASE("parameters") {
  auto a = kummer_params(7, 3, 1);
  CHECK(a.r == 1);
  CHECK(a.m == 2);
  auto b = kummer_params(5, 2, 1);
  CHECK(b.r == 2);
  CHECK(b.m == 1);
  CHECK(code_of([] { kummer_params(7, 5, 1); }) == ErrorCode::NotDividing);
  CHECK(code_of([] { kummer_params(8, 3, 1); }) == ErrorCode::NotPrime);
  CHECK(code_of([] { kummer_params(5, 5, 1); }) == ErrorCode::BadInput);
  CHECK(code_of([] { kummer_params(5, 2, 1, 3); }) == ErrorCode::BadInput);
}

TEST_CASE("roots of unity") {
  auto f7 = kummer_base_field(7, 1);
  CHECK(find_xi(f7, 3, 1).coords() == c1(2));
  auto f5 = kummer_base_field(5, 1);
  CHECK(find_xi(f5, 2, 2).coords() == c1(2));
  CHECK(code_of([&] { find_xi(f7, 5, 1); }) == ErrorCode::NoSuchRoot);
  auto f13 = kummer_base_field(13, 1);
  CHECK(find_xi(f13, 3, 1).coords() == c1(3));
}

TEST_CASE("the (7,3,1) level") {
  KummerLevel k = make_level(7, 3, 1, 1);
  CHECK(k.ctx->abs_degree() == 3);
  CHECK(k.xi.coords() == c1(2));
  CHECK(k.zeta.coords() == c1(4));
  CHECK(frobenius(k.alpha, 1) == k.alpha * FieldElement::embed(k.ctx, k.zeta));
  CHECK(conj_sum(k).coords() == c1(3));
  CHECK(kummer_normality(k));
  CHECK(verify_kummer_level(k).ok());

  MultTable t = kummer_table(k);
  CHECK(t.coefficient_field == CoefficientField::Prime);
  CHECK(t.row(1).terms == std::vector<SparseTerm>{{0, c1(5)}, {1, c1(1)}});
  CHECK(t.row(2).terms == std::vector<SparseTerm>{{0, c1(1)}, {2, c1(5)}});
  CHECK(t.square_row.terms == std::vector<SparseTerm>{{0, c1(4)}, {1, c1(6)}, {2, c1(2)}});
  CHECK(verify_table(t).ok());
  CHECK(verify_full_table(t).ok());

  // gamma^8 = 5 gamma + gamma^7 and gamma + gamma^7 + gamma^49 = 3
  const auto& g = k.gamma;
  CHECK(g.pow(8) == g.scaled(5) + g.pow(7));
  CHECK(g.pow(50) == g - g.pow(49).scaled(2));
  CHECK(g + g.pow(7) + g.pow(49) == FieldElement::from_prime(k.ctx, 3));
  CHECK(g.pow(2) == g.scaled(4) + g.pow(7).scaled(6) + g.pow(49).scaled(2));
  // the same identities in the reference field Z_7[x]/(x^3 - 2)
  naive::Binomial r(7, 3, 2);
  naive::Vec gr = r.inv(r.sub(r.x(), r.one()));
  CHECK(gr == g.coords());
  CHECK(r.pow(gr, 8) == r.add(r.scale(gr, 5), r.pow(gr, 7)));
  CHECK(r.add(r.add(gr, r.pow(gr, 7)), r.pow(gr, 49)) == r.constant(3));
  CHECK(r.relative_rank(gr, 1) == 3);

  auto params = kummer_params(7, 3, 1);
  CHECK_NOTHROW(kummer_extend(k.xi.ctx(), params, k.xi, FieldElement::from_prime(k.xi.ctx(), 3)));
  CHECK(code_of([&] { kummer_extend(k.xi.ctx(), params, k.xi, FieldElement::zero(k.xi.ctx())); }) ==
        ErrorCode::BadB);
}

TEST_CASE("b with b^(q^s) = xi is rejected") {
  auto f13 = kummer_base_field(13, 1);
  auto params = kummer_params(13, 3, 1);
  FieldElement xi = find_xi(f13, 3, params.r);
  bool found = false;
  for (std::int64_t b = 1; b < 13; ++b) {
    FieldElement bb = FieldElement::from_prime(f13, b);
    if (bb.pow(3) == xi) {
      found = true;
      CHECK(code_of([&] { kummer_extend(f13, params, xi, bb); }) == ErrorCode::BadB);
    }
  }
  // xi has order q^r, so it is never a q^s-th power of an element of K
  CHECK_FALSE(found);
  auto f7 = kummer_base_field(7, 1);
  auto p7 = kummer_params(7, 3, 1);
  // with xi = 1 (not primitive) the input is rejected outright
  CHECK(code_of([&] { kummer_extend(f7, p7, FieldElement::one(f7), FieldElement::one(f7)); }) == ErrorCode::BadInput);
}

TEST_CASE("the (5,2,1) levels") {
  KummerLevel k1 = make_level(5, 2, 1, 1);
  CHECK(k1.ctx->abs_degree() == 2);
  CHECK(verify_table(kummer_table(k1)).ok());
  KummerLevel k2 = make_level(5, 2, 1, 2);
  CHECK(k2.ctx->abs_degree() == 4);
  CHECK(k2.zeta.coords() == c1(2));
  CHECK(k2.ctx->modulus() == Poly::from_ints(k2.xi.ctx(), {-2, 0, 0, 0, 1}));
  CHECK(oracle::is_irreducible_bruteforce(k2.ctx->modulus()));
  CHECK(conj_sum(k2).coords() == c1(4));
  CHECK(kummer_normality(k2));
  std::vector<FieldElement> conj = conjugates(k2.gamma, 1);
  CHECK(rank_over_base(conj) == 4);
  CHECK(verify_kummer_level(k2).ok());
  CHECK(verify_full_table(kummer_table(k2)).ok());
  CHECK_FALSE(oracle::is_normal_bruteforce(FieldElement::one(k2.ctx), 1));
}

TEST_CASE("conjugate sums are Frobenius invariant") {
  for (auto [p, q, s] : {std::tuple{7u, 3u, 1u}, std::tuple{5u, 2u, 2u}, std::tuple{13u, 3u, 1u}}) {
    KummerLevel k = make_level(p, q, 1, s);
    FieldElement expected = FieldElement::embed(k.ctx, conj_sum(k));
    CHECK(relative_conjugate_sum(k.gamma, 1) == expected);
    CHECK(relative_conjugate_sum(frobenius(k.gamma, 1), 1) == expected);
  }
}

TEST_CASE("the (13,3,1) level") {
  KummerLevel k = make_level(13, 3, 1, 1);
  CHECK(k.xi.coords() == c1(3));
  CHECK(k.zeta.coords() == c1(3));
  CHECK(verify_kummer_level(k).ok());
  CHECK(verify_table(kummer_table(k)).ok());
  naive::Binomial r(13, 3, 3);
  naive::Vec gr = r.inv(r.sub(r.x(), r.one()));
  CHECK(gr == k.gamma.coords());
  CHECK(r.relative_rank(gr, 1) == 3);
}

TEST_CASE("extensions of a non-prime base") {
  // F_4 -> F_64 by x^3 - xi; F_9 -> F_(9^4) by x^4 - xi with xi of order 8
  KummerLevel a = make_level(2, 3, 2, 1);
  CHECK(a.ctx->abs_degree() == 6);
  CHECK(verify_kummer_level(a).ok());
  CHECK(verify_full_table(kummer_table(a)).ok());
  CHECK(kummer_normality(a));
  KummerLevel b = make_level(3, 2, 2, 2);
  CHECK(b.ctx->abs_degree() == 8);
  CHECK(verify_kummer_level(b).ok());
  CHECK(verify_table(kummer_table(b)).ok());
}

TEST_CASE("other b values") {
  for (std::int64_t b = 1; b < 7; ++b) {
    CAPTURE(b);
    KummerLevel k = make_level(7, 3, 1, 1, b);
    CHECK(verify_kummer_level(k).ok());
    CHECK(verify_table(kummer_table(k)).ok());
    CHECK(kummer_normality(k));
  }
}
