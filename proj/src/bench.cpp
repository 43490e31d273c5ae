#include "nbtower/bench.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>

#include "nbtower/kernels.hpp"

namespace nbtower {

namespace {

template <typename F>
double ops_per_sec(std::size_t ops, F&& body) {
  auto t0 = std::chrono::steady_clock::now();
  body();
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return secs > 0 ? static_cast<double>(ops) / secs : 0.0;
}

}  // namespace

const MultTable& normal_table(const LevelEntry& entry) {
  if (const auto* tl = std::get_if<TowerLevel>(&entry)) return tl->delta;
  return std::get<KummerEntry>(entry).table;
}

BenchReport run_bench(const TowerFile& file, std::size_t ops, std::uint64_t seed, std::size_t level) {
  if (file.levels.empty()) throw Error(ErrorCode::BadInput, "tower file has no levels");
  if (level == 0) level = file.levels.size();
  if (level > file.levels.size()) throw Error(ErrorCode::BadInput, "level out of range");
  const MultTable& table = normal_table(file.levels[level - 1]);
  const CtxPtr& ctx = table.generator.ctx();

  BenchReport report;
  report.ops = ops;
  report.level = level;
  report.abs_degree = ctx->abs_degree();
  report.nonzero_structure_constants = sparsity(table).nonzero_structure_constants;
  report.threads = kernels::thread_count();
  if (ops == 0) return report;

  NormalBasis nb(table);
  const std::size_t n = ctx->abs_degree();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> digit(0, ctx->prime().value() - 1);
  std::vector<std::uint32_t> a(ops * n), b(ops * n), an(ops * n), bn(ops * n);
  for (auto& x : a) x = digit(rng);
  for (auto& x : b) x = digit(rng);
  for (std::size_t i = 0; i < ops; ++i) {
    Coords ai(a.begin() + i * n, a.begin() + (i + 1) * n), bi(b.begin() + i * n, b.begin() + (i + 1) * n);
    Coords x = nb.to_normal(ai), y = nb.to_normal(bi);
    std::copy(x.begin(), x.end(), an.begin() + i * n);
    std::copy(y.begin(), y.end(), bn.begin() + i * n);
  }

  std::vector<std::uint32_t> poly_out(ops * n), normal_out(ops * n), par_out(ops * n);
  BenchRow nmul{"multiply", "normal (table)"}, pmul{"multiply", "polynomial"};
  nmul.serial_ops_per_sec = ops_per_sec(ops, [&] { kernels::normal_mul_serial(nb, an, bn, normal_out); });
  nmul.parallel_ops_per_sec = ops_per_sec(ops, [&] { kernels::normal_mul_parallel(nb, an, bn, par_out); });
  report.gate_mismatches += normal_out != par_out;
  pmul.serial_ops_per_sec = ops_per_sec(ops, [&] { kernels::poly_mul_serial(*ctx, a, b, poly_out); });
  pmul.parallel_ops_per_sec = ops_per_sec(ops, [&] { kernels::poly_mul_parallel(*ctx, a, b, par_out); });
  report.gate_mismatches += poly_out != par_out;

  for (std::size_t i = 0; i < ops; ++i) {
    Coords expect = nb.to_normal(Coords(poly_out.begin() + i * n, poly_out.begin() + (i + 1) * n));
    report.gate_mismatches += !std::equal(expect.begin(), expect.end(), normal_out.begin() + i * n);
    ++report.gate_checked;
  }

  FrobeniusPower frob(ctx, ctx->base_abs_degree());
  BenchRow nfrob{"frobenius", "normal (rotation)"}, pfrob{"frobenius", "polynomial (matrix)"};
  nfrob.serial_ops_per_sec = ops_per_sec(ops, [&] { kernels::normal_frobenius_serial(nb, an, normal_out); });
  nfrob.parallel_ops_per_sec = ops_per_sec(ops, [&] { kernels::normal_frobenius_parallel(nb, an, par_out); });
  pfrob.serial_ops_per_sec = ops_per_sec(ops, [&] { kernels::poly_frobenius_serial(frob, a, poly_out); });
  pfrob.parallel_ops_per_sec = ops_per_sec(ops, [&] { kernels::poly_frobenius_parallel(frob, a, par_out); });
  for (std::size_t i = 0; i < ops; ++i) {
    Coords expect = nb.to_normal(Coords(poly_out.begin() + i * n, poly_out.begin() + (i + 1) * n));
    report.gate_mismatches += !std::equal(expect.begin(), expect.end(), normal_out.begin() + i * n);
  }
  report.rows = {nmul, pmul, nfrob, pfrob};
  return report;
}

std::string BenchReport::to_text() const {
  std::ostringstream out;
  out << "level " << level << ", degree " << abs_degree << ", " << nonzero_structure_constants
      << " nonzero structure constants, " << threads << " thread(s)\n";
  if (ops == 0) {
    out << "no operations requested\n";
    return out.str();
  }
  out << "correctness gate: " << gate_checked << " products compared, " << gate_mismatches << " mismatches\n";
  char line[160];
  std::snprintf(line, sizeof line, "%-10s %-22s %16s %16s\n", "operation", "basis", "serial ops/s", "parallel ops/s");
  out << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-10s %-22s %16.0f %16.0f\n", r.operation.c_str(), r.basis.c_str(),
                  r.serial_ops_per_sec, r.parallel_ops_per_sec);
    out << line;
  }
  if (rows.size() == 4 && rows[3].serial_ops_per_sec > 0) {
    std::snprintf(line, sizeof line, "frobenius rotation / matrix (serial): %.2fx\n",
                  rows[2].serial_ops_per_sec / rows[3].serial_ops_per_sec);
    out << line;
  }
  if (rows.size() == 4 && rows[1].serial_ops_per_sec > 0) {
    std::snprintf(line, sizeof line, "multiply normal / polynomial (serial): %.2fx\n",
                  rows[0].serial_ops_per_sec / rows[1].serial_ops_per_sec);
    out << line;
  }
  return out.str();
}

}  // namespace nbtower
