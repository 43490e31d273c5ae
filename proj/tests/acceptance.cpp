// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes. All comparisons are exact.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "nbtower/artin_schreier.hpp"
#include "nbtower/bench.hpp"
#include "nbtower/kummer.hpp"
#include "nbtower/linalg.hpp"
#include "nbtower/oracle.hpp"
#include "nbtower/structure_tables.hpp"
#include "nbtower/tower.hpp"
#include "nbtower/tower_file.hpp"
#include "support/helpers.hpp"
#include "support/naive_field.hpp"

using namespace nbtower;
using testing_support::random_element;
using testing_support::random_nonzero;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> problems;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (problems.size() < 5) problems.push_back(what);
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct TowerCase {
  std::uint32_t p;
  std::size_t levels;
};
const TowerCase kTowers[] = {{2, 6}, {3, 4}, {5, 3}};

std::vector<TowerSpec>& towers() {
  static std::vector<TowerSpec> built;
  return built;
}

// ---- 1: tower construction
Outcome tower_construction() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  std::size_t levels = 0, oracle_levels = 0;
  for (const auto& c : kTowers) {
    TowerSpec spec = build_tower(PrimeModulus(c.p), c.levels);
    naive::Tower ref = naive::Tower::derive(c.p, c.levels + 1);
    for (std::size_t k = 1; k <= spec.levels.size(); ++k) {
      const ASLevel& l = spec.levels[k - 1].level;
      const std::string at = "p=" + std::to_string(c.p) + " level " + std::to_string(k);
      const std::size_t deg = l.ctx->abs_degree();
      ++levels;
      o.require(as_irreducible(l.alpha), at + ": trace criterion");
      if (deg <= 64) {
        ++oracle_levels;
        o.require(oracle::is_irreducible_bruteforce(l.ctx->modulus(), 64), at + ": oracle irreducibility");
        o.require(oracle::is_normal_bruteforce(l.delta_inv, 1), at + ": oracle normality over Z_p");
        o.require(oracle::is_normal_bruteforce(l.delta_inv, l.step()), at + ": oracle normality over K");
      }
      o.require(is_normal_over_base(l.delta_inv), at + ": delta^-1 normal over K");
      o.require(is_normal_over_prime(l.delta_inv), at + ": delta^-1 normal over Z_p");
      o.require(relative_conjugate_sum(l.delta, l.step()) == delta_conjugate_sum_closed_form(l),
                at + ": conjugate sum of delta");
      // independent rederivation of the tower
      o.require(l.delta.coords() == ref.alpha(k + 1), at + ": reference tower disagrees on delta");
    }
    towers().push_back(std::move(spec));
  }
  const double secs = seconds_since(t0);
  o.require(secs < 60, "runtime " + std::to_string(secs) + " s exceeds 60 s");
  std::ostringstream d;
  d << levels << " levels (degrees up to 64, 81, 125), oracle on " << oracle_levels << " levels, " << secs << " s";
  o.detail = d.str();
  return o;
}

// ---- 2: sparse-row exactness
Outcome row_exactness() {
  Outcome o;
  std::size_t rows = 0, entries = 0;
  for (const auto& spec : towers())
    for (const auto& tl : spec.levels)
      for (const MultTable* t : {&tl.gamma, &tl.delta}) {
        auto r = verify_table(*t, "level " + std::to_string(tl.level.ctx->depth()));
        rows += r.checks_run;
        for (const auto& f : r.failures) o.require(false, "p=" + std::to_string(tl.level.p()) + " " + f.check);
        auto full = verify_full_table(*t);
        entries += full.checks_run;
        o.require(full.ok(), "full table: " + full.summary());
      }
  o.detail = std::to_string(rows) + " rows and " + std::to_string(entries) + " full-table products, 0 mismatches";
  if (!o.pass) o.detail = std::to_string(rows) + " rows checked";
  return o;
}

// ---- 3: sparsity
Outcome sparsity_claims() {
  Outcome o;
  std::size_t gamma_rows = 0, delta_rows = 0, delta_two = 0;
  for (const auto& spec : towers())
    for (const auto& tl : spec.levels) {
      const ASLevel& l = tl.level;
      const auto& k = *l.ctx->base();
      const PrimeModulus& pm = k.prime();
      const std::uint32_t p = l.p(), h = l.h.value(), b = l.b.value();
      const std::string at = "p=" + std::to_string(p) + " level " + std::to_string(l.ctx->depth());
      for (std::uint32_t i = 1; i < p; ++i) {
        ++gamma_rows;
        const SparseRow& g = tl.gamma.row(i);
        o.require(g.terms.size() == 2 && k.is_zero(g.constant), at + " gamma row " + std::to_string(i) + ": not two terms");
        const std::uint32_t c = pm.inv(pm.mul(i, h));
        for (const auto& t : g.terms) {
          o.require(k.in_prime_field(t.coeff), at + ": gamma coefficient outside Z_p");
          o.require(t.coeff[0] == c || t.coeff[0] == pm.neg(c), at + ": gamma coefficient is not +-(ih)^-1");
        }
        // delta rows: two basis terms with coefficients (ih)^-1 - b and -((ih)^-1 + b); a term is
        // absent exactly when its coefficient is zero in Z_p
        ++delta_rows;
        const SparseRow& d = tl.delta.row(i);
        const std::size_t expected_terms = (pm.sub(c, b) != 0) + (pm.add(c, b) != 0);
        delta_two += d.terms.size() == 2;
        o.require(d.terms.size() == expected_terms && d.terms.size() <= 2,
                  at + " delta row " + std::to_string(i) + ": unexpected term count");
        o.require(d.constant == k.from_prime(pm.neg(pm.mul(b, b))), at + ": delta row constant is not -b^2");
        for (const auto& t : d.terms) o.require(k.in_prime_field(t.coeff), at + ": delta coefficient outside Z_p");
      }
      o.require(tl.gamma.square_row.weight(k) <= p + 1, at + ": gamma square row weight exceeds p+1");
      o.require(sparsity(tl.gamma).coefficients_in_prime_field && sparsity(tl.delta).coefficients_in_prime_field,
                at + ": off-square coefficient outside Z_p");
    }
  std::ostringstream d;
  d << gamma_rows << " gamma rows with exactly 2 terms; " << delta_rows << " delta rows with constant -b^2 and "
    << "at most 2 terms (" << delta_two << " with exactly 2; the others lose the term whose coefficient "
    << "(ih)^-1 -+ b is 0 mod p)";
  o.detail = d.str();
  return o;
}

// ---- 4: Kummer levels
Outcome kummer_levels() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  struct Case {
    std::uint32_t p, q, l, s;
  };
  std::size_t count = 0;
  for (const Case& c : {Case{7, 3, 1, 1}, Case{5, 2, 1, 1}, Case{5, 2, 1, 2}, Case{13, 3, 1, 1}}) {
    const std::string at = "(" + std::to_string(c.p) + "," + std::to_string(c.q) + "," + std::to_string(c.l) +
                           ",s=" + std::to_string(c.s) + ")";
    KummerParams params = kummer_params(c.p, c.q, c.l, c.s);
    CtxPtr base = kummer_base_field(c.p, c.l);
    KummerLevel k = kummer_extend(base, params, find_xi(base, c.q, params.r), FieldElement::one(base));
    ++count;
    // order of zeta is exactly q^s
    const FieldElement one = FieldElement::one(base);
    o.require(k.zeta.pow(params.degree()) == one && !(k.zeta.pow(params.degree() / c.q) == one), at + ": zeta order");
    MultTable t = kummer_table(k);
    o.require(verify_table(t).ok(), at + ": rows");
    o.require(verify_full_table(t).ok(), at + ": full table");
    o.require(relative_conjugate_sum(k.gamma, c.l) == FieldElement::embed(k.ctx, conj_sum(k)), at + ": conj_sum");
    o.require(is_normal_over_base(k.gamma) && kummer_normality(k), at + ": gamma not normal");
    o.require(oracle::is_normal_bruteforce(k.gamma, c.l), at + ": oracle normality");
    o.require(verify_kummer_level(k).ok(), at + ": level identities");
    if (c.p == 7) {
      const auto& g = k.gamma;
      o.require(g.pow(8) == g.scaled(5) + g.pow(7), "gamma^8 != 5 gamma + gamma^7");
      o.require(g + g.pow(7) + g.pow(49) == FieldElement::from_prime(k.ctx, 3), "gamma + gamma^7 + gamma^49 != 3");
    }
  }
  const double secs = seconds_since(t0);
  o.require(secs < 10, "runtime exceeds 10 s");
  std::ostringstream d;
  d << count << " levels, gamma^8 = 5 gamma + gamma^7 and conjugate sum 3 in F_343, " << secs << " s";
  o.detail = d.str();
  return o;
}

// Fields used for random sampling: every tower level and its base with
// total degree <= 64 when extended once more.
std::vector<CtxPtr> sample_bases(std::size_t max_total) {
  std::vector<CtxPtr> out;
  for (const auto& spec : towers()) {
    out.push_back(spec.levels[0].level.ctx->base());
    for (const auto& tl : spec.levels)
      if (tl.level.ctx->abs_degree() * tl.level.p() <= max_total) out.push_back(tl.level.ctx);
  }
  return out;
}

// ---- 5: oracle cross-agreement
Outcome oracle_agreement() {
  Outcome o;
  std::mt19937_64 rng(2024);
  const auto bases = sample_bases(64);
  std::size_t pairs = 0, irreducible = 0, elements = 0;
  for (std::size_t it = 0; pairs < 1200; ++it) {
    const CtxPtr& k = bases[it % bases.size()];
    FieldElement alpha = random_element(k, rng);
    const std::uint32_t p = k->prime().value();
    std::vector<Coords> coeffs(p + 1, k->zero());
    coeffs[0] = k->neg(alpha.coords());
    coeffs[1] = k->from_prime(p - 1);
    coeffs[p] = k->one();
    const bool fast = as_irreducible(alpha);
    const bool brute = oracle::is_irreducible_bruteforce(Poly(k, coeffs), 64);
    o.require(fast == brute, "irreducibility disagreement at " + alpha.to_string());
    irreducible += brute;
    ++pairs;
  }
  std::vector<CtxPtr> fields = sample_bases(64 * 5);
  for (std::size_t it = 0; elements < 1200; ++it) {
    const CtxPtr& k = fields[it % fields.size()];
    if (k->abs_degree() > 64) continue;
    FieldElement a = random_element(k, rng);
    o.require(min_poly(a) == oracle::min_poly_via_conjugates(a), "min_poly disagreement at " + a.to_string());
    ++elements;
  }
  std::ostringstream d;
  d << pairs << " (base, alpha) pairs over " << bases.size() << " bases (" << irreducible
    << " irreducible), " << elements << " min_poly comparisons, 0 disagreements";
  o.detail = d.str();
  if (!o.pass) o.detail = "disagreements found";
  return o;
}

// ---- 6: shift predicate soundness
Outcome shift_predicate_soundness() {
  Outcome o;
  std::mt19937_64 rng(77);
  struct Setting {
    CtxPtr ctx;
    std::size_t step;
  };
  std::vector<Setting> settings;
  for (const auto& spec : towers())
    for (const auto& tl : spec.levels) {
      const auto& e = tl.level.ctx;
      if (e->log2_size() > 16) continue;
      for (std::size_t step = 1; step < e->abs_degree(); ++step)
        if (e->abs_degree() % step == 0) settings.push_back({e, step});
    }
  {
    KummerParams params = kummer_params(7, 3, 1);
    CtxPtr base = kummer_base_field(7, 1);
    settings.push_back({kummer_extend(base, params, find_xi(base, 3, 1), FieldElement::one(base)).ctx, 1});
  }
  std::size_t samples = 0, accepted = 0, rejected_but_normal = 0;
  for (std::size_t it = 0; samples < 1500; ++it) {
    const Setting& s = settings[it % settings.size()];
    FieldElement delta = random_nonzero(s.ctx, rng);
    if (!oracle::is_normal_bruteforce(delta, s.step)) continue;
    // d drawn uniformly from the subfield with p^step elements
    auto basis = subfield_basis(s.ctx, s.step);
    FieldElement d = FieldElement::zero(s.ctx);
    for (const auto& v : basis) d = d + v.scaled(static_cast<std::uint32_t>(rng() % s.ctx->prime().value()));
    ++samples;
    const bool ok = shift_preserves_normality(delta, d, s.step);
    const bool normal = oracle::is_normal_bruteforce(delta + d, s.step);
    if (ok) {
      ++accepted;
      o.require(normal, "counterexample: delta=" + delta.to_string() + " d=" + d.to_string());
    } else {
      rejected_but_normal += normal;
    }
  }
  std::ostringstream d;
  d << samples << " samples over " << settings.size() << " (field, step) settings, " << accepted
    << " accepted, 0 counterexamples (" << rejected_but_normal << " rejected shifts were still normal)";
  o.detail = d.str();
  if (!o.pass) o.detail = "counterexamples found";
  return o;
}

// ---- 7: benchmark correctness gate
Outcome bench_gate() {
  Outcome o;
  TowerFile f = tower_file(build_tower(PrimeModulus(2), 5));
  BenchReport r = run_bench(f, 100000, 1);
  o.require(r.abs_degree == 32, "not the degree-32 level");
  o.require(r.gate_checked == 100000, "not every pair was compared");
  o.require(r.gate_ok(), std::to_string(r.gate_mismatches) + " mismatches");
  std::ostringstream d;
  d << r.gate_checked << " pairs in the degree-32 binary tower, " << r.gate_mismatches << " mismatches";
  if (r.rows.size() == 4)
    d << " (serial ops/s: normal " << static_cast<long>(r.rows[0].serial_ops_per_sec) << ", polynomial "
      << static_cast<long>(r.rows[1].serial_ops_per_sec) << "; not asserted)";
  o.detail = d.str();
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"tower construction", tower_construction}, {"sparse-row exactness", row_exactness},
      {"sparsity", sparsity_claims},               {"Kummer levels", kummer_levels},
      {"oracle cross-agreement", oracle_agreement}, {"shift predicate soundness", shift_predicate_soundness},
      {"benchmark correctness gate", bench_gate}};
  int failed = 0, index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("%s criterion %d (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.c_str(),
                seconds_since(t0));
    for (const auto& p : o.problems) std::printf("    %s\n", p.c_str());
    failed += !o.pass;
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
