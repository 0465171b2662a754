#include <benchmark/benchmark.h>

#include <anires/anires.hpp>

using namespace anires;

static void BM_BenderWu(benchmark::State& state) {
  const int kmax = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(bw::build(kmax).stored_entries());
}
BENCHMARK(BM_BenderWu)->Arg(8)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

static void BM_BasisIntegral(benchmark::State& state) {
  const BorelBasisSpec spec{static_cast<int>(state.range(0)), 2.5, 1.0 / 3.0, 3.0};
  for (auto _ : state) benchmark::DoNotOptimize(basis_integral(spec, 0.4, QuadratureSpec{}));
}
BENCHMARK(BM_BasisIntegral)->Arg(0)->Arg(4)->Arg(8)->Unit(benchmark::kMicrosecond);

static void BM_Vpt(benchmark::State& state) {
  const CoefficientTable table = bw::build(11).energies();
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(vpt::vpt_energy(table, k, 0.1, 0.5).W());
}
BENCHMARK(BM_Vpt)->Arg(3)->Arg(7)->Arg(11)->Unit(benchmark::kMicrosecond);
BENCHMARK_MAIN();
