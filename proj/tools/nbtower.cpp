// nbtower: build, verify, inspect and benchmark normal-basis towers.
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "nbtower/bench.hpp"
#include "nbtower/kummer.hpp"
#include "nbtower/tower.hpp"
#include "nbtower/tower_file.hpp"

using namespace nbtower;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::NormalityFailure:
    case ErrorCode::ConstructionFailure:
      return kVerifyFailed;
    default:
      return kUsage;
  }
}

std::string sparsity_text(const MultTable& t) {
  SparsityReport s = sparsity(t);
  return std::to_string(s.nonzero_structure_constants) + " nonzero, " + std::to_string(s.rows_with_two_terms) +
         " two-term rows, max row weight " + std::to_string(s.max_row_weight) + ", " +
         std::to_string(s.constant_terms_used) + " constants, " + std::to_string(s.prime_field_coefficients) + "/" +
         std::to_string(s.total_coefficients) + " off-square coefficients in Z_p";
}

void print_summary(const TowerFile& f) {
  for (std::size_t i = 0; i < f.levels.size(); ++i) {
    if (const auto* tl = std::get_if<TowerLevel>(&f.levels[i])) {
      std::cout << "level " << i + 1 << ": artin_schreier, degree " << tl->level.ctx->abs_degree() << " (relative "
                << tl->level.ctx->rel_degree() << "), h = " << tl->level.h.value() << "\n"
                << "  gamma table: " << sparsity_text(tl->gamma) << "\n"
                << "  delta table: " << sparsity_text(tl->delta) << "\n";
    } else {
      const auto& k = std::get<KummerEntry>(f.levels[i]);
      std::cout << "level " << i + 1 << ": kummer q=" << k.level.params.q << " l=" << k.level.params.l
                << " r=" << k.level.params.r << " s=" << k.level.params.s << ", degree " << k.level.ctx->abs_degree()
                << " (relative " << k.level.ctx->rel_degree() << "), xi = " << k.level.xi.to_string()
                << ", zeta = " << k.level.zeta.to_string() << "\n"
                << "  kummer table: " << sparsity_text(k.table) << "\n";
    }
  }
}

nlohmann::json report_json(const VerificationReport& r) {
  nlohmann::json failures = nlohmann::json::array();
  for (const auto& f : r.failures)
    failures.push_back({{"check", f.check}, {"input", f.input}, {"expected", f.expected}, {"actual", f.actual}});
  return {{"checks_run", r.checks_run}, {"ok", r.ok()}, {"failures", failures}};
}

void print_report(const VerificationReport& r) { std::cout << "verify: " << r.summary() << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normal-basis towers over finite fields"};
  app.require_subcommand(1);

  std::uint32_t p = 0, q = 0, l = 1, s = 1;
  std::size_t levels = 1;
  std::optional<std::int64_t> b;
  std::string out_path, in_path;
  bool deep = false, as_json = false;
  std::size_t ops = 10000, bench_level = 0;
  std::uint64_t seed = 1;

  auto* build = app.add_subcommand("build", "Build an Artin-Schreier tower and write it as JSON");
  build->add_option("--p", p, "Prime characteristic")->required();
  build->add_option("--levels", levels, "Number of degree-p steps")->required()->check(CLI::PositiveNumber);
  build->add_option("--b", b, "Nonzero shift b in Z_p (default 1)");
  build->add_option("--out", out_path, "Output file");

  auto* kummer = app.add_subcommand("kummer", "Build a Kummer extension level and write it as JSON");
  kummer->add_option("--p", p, "Prime characteristic")->required();
  kummer->add_option("--q", q, "Prime q dividing p^l - 1")->required();
  kummer->add_option("--l", l, "Degree of the base field")->check(CLI::PositiveNumber);
  kummer->add_option("--s", s, "Relative degree exponent, 1 <= s <= r")->check(CLI::PositiveNumber);
  kummer->add_option("--b", b, "Shift b, as an element of Z_p (default 1)");
  kummer->add_option("--out", out_path, "Output file");

  auto* verify = app.add_subcommand("verify", "Re-check every invariant of a saved file");
  verify->add_option("in", in_path, "Tower file")->required();
  verify->add_flag("--deep", deep, "Also check all m*m products of each table");
  verify->add_flag("--json", as_json, "Print the report as JSON");

  auto* inspect = app.add_subcommand("inspect", "Summarize a saved file");
  inspect->add_option("in", in_path, "Tower file")->required();

  auto* bench = app.add_subcommand("bench", "Compare normal-basis and polynomial-basis arithmetic");
  bench->add_option("in", in_path, "Tower file")->required();
  bench->add_option("--ops", ops, "Random pairs per measurement");
  bench->add_option("--seed", seed, "Seed for the random inputs");
  bench->add_option("--level", bench_level, "Level to measure (default: last)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*build || *kummer) {
      if (!is_prime(p) || p >= PrimeModulus::kLimit) {
        std::cerr << "error: p must be prime (and below 65536)\n";
        return kUsage;
      }
    }
    if (*build) {
      std::optional<FpScalar> bb;
      if (b) bb = FpScalar(PrimeModulus(p), *b);
      TowerFile f = tower_file(build_tower(PrimeModulus(p), levels, bb));
      print_summary(f);
      if (!out_path.empty()) save_file(f, out_path);
      return kOk;
    }
    if (*kummer) {
      KummerParams params = kummer_params(p, q, l, s);
      CtxPtr base = kummer_base_field(p, l);
      FieldElement xi = find_xi(base, q, params.r);
      FieldElement bb = FieldElement::from_prime(base, b.value_or(1));
      TowerFile f = tower_file(kummer_extend(base, params, xi, bb));
      print_summary(f);
      if (!out_path.empty()) save_file(f, out_path);
      return kOk;
    }
    TowerFile f = load_file(in_path);
    if (*verify) {
      VerificationReport r = verify_file(f, deep);
      if (as_json)
        std::cout << report_json(r).dump(2) << "\n";
      else
        print_report(r);
      return r.ok() ? kOk : kVerifyFailed;
    }
    if (*inspect) {
      std::cout << "p = " << f.p << ", " << f.levels.size() << " level(s)\n";
      print_summary(f);
      return kOk;
    }
    BenchReport r = run_bench(f, ops, seed, bench_level);
    std::cout << r.to_text();
    if (!r.gate_ok()) {
      std::cerr << "error: table-driven and polynomial products disagree\n";
      return kVerifyFailed;
    }
    return kOk;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  }
}
