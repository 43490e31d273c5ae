// Serial reference kernels against their OpenMP counterparts on the
// degree-32 binary tower.
#include <benchmark/benchmark.h>

#include <random>

#include "nbtower/kernels.hpp"
#include "nbtower/tower.hpp"

using namespace nbtower;

namespace {

struct Fixture {
  TowerSpec spec = build_tower(PrimeModulus(2), 5);
  const MultTable& table = spec.levels.back().delta;
  CtxPtr ctx = table.generator.ctx();
  NormalBasis nb{table};
  FrobeniusPower frob{ctx, ctx->base_abs_degree()};
  std::size_t n = ctx->abs_degree();
  std::vector<std::uint32_t> a, b, an, bn, out;

  Fixture() {
    const std::size_t count = 4096;
    std::mt19937_64 rng(7);
    a.resize(count * n);
    b.resize(count * n);
    for (auto& x : a) x = rng() & 1;
    for (auto& x : b) x = rng() & 1;
    for (std::size_t i = 0; i < count; ++i) {
      Coords x = nb.to_normal(Coords(a.begin() + i * n, a.begin() + (i + 1) * n));
      Coords y = nb.to_normal(Coords(b.begin() + i * n, b.begin() + (i + 1) * n));
      an.insert(an.end(), x.begin(), x.end());
      bn.insert(bn.end(), y.begin(), y.end());
    }
    out.resize(count * n);
  }
  std::size_t count() const { return a.size() / n; }
};

Fixture& fixture() {
  static Fixture f;
  return f;
}

template <auto Kernel>
void poly_mul(benchmark::State& state) {
  auto& f = fixture();
  for (auto _ : state) Kernel(*f.ctx, f.a, f.b, f.out);
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * f.count()));
}

template <auto Kernel>
void normal_mul(benchmark::State& state) {
  auto& f = fixture();
  for (auto _ : state) Kernel(f.nb, f.an, f.bn, f.out);
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * f.count()));
}

template <auto Kernel>
void poly_frob(benchmark::State& state) {
  auto& f = fixture();
  for (auto _ : state) Kernel(f.frob, f.a, f.out);
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * f.count()));
}

template <auto Kernel>
void normal_frob(benchmark::State& state) {
  auto& f = fixture();
  for (auto _ : state) Kernel(f.nb, f.an, f.out);
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * f.count()));
}

}  // namespace

BENCHMARK(poly_mul<kernels::poly_mul_serial>)->Name("poly_mul/serial");
BENCHMARK(poly_mul<kernels::poly_mul_parallel>)->Name("poly_mul/parallel");
BENCHMARK(normal_mul<kernels::normal_mul_serial>)->Name("normal_mul/serial");
BENCHMARK(normal_mul<kernels::normal_mul_parallel>)->Name("normal_mul/parallel");
BENCHMARK(poly_frob<kernels::poly_frobenius_serial>)->Name("poly_frobenius/serial");
BENCHMARK(poly_frob<kernels::poly_frobenius_parallel>)->Name("poly_frobenius/parallel");
BENCHMARK(normal_frob<kernels::normal_frobenius_serial>)->Name("normal_frobenius/serial");
BENCHMARK(normal_frob<kernels::normal_frobenius_parallel>)->Name("normal_frobenius/parallel");

BENCHMARK_MAIN();
