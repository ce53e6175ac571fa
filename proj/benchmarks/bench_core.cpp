// Microbenchmarks for the hot paths: generator assembly, the midpoint
// exponential step, full propagation throughput, and dark-subspace transport.
//
//   ./nvholo_bench                       # all benchmarks
//   ./nvholo_bench --benchmark_filter=propagate

#include <benchmark/benchmark.h>

#include "nvholo/gate_analysis.hpp"
#include "nvholo/linalg.hpp"
#include "nvholo/model.hpp"
#include "nvholo/propagate.hpp"

namespace {

nvholo::FourLevelParams canonical_four_level() {
  nvholo::FourLevelParams params;
  params.schedule.kind = nvholo::EnvelopeKind::designed;
  params.schedule.chi = -0.25 * 3.14159265358979323846;
  params.schedule.phi = 0.0;
  params.schedule.omega0 = 20.0;
  params.schedule.alpha = 1.0;
  params.delta1 = 20.0;
  params.delta2 = 20.0;
  return params;
}

nvholo::NineLevelParams canonical_nine_level() {
  nvholo::NineLevelParams params;
  params.d_gs = 2870.0;
  params.excited_energies = {7350.0, 4250.0, -4860.0, -4860.0, -950.0, -950.0};
  params.delta1 = 20.0;
  params.delta2 = 20.0;
  params.schedule = canonical_four_level().schedule;
  params.dipole = nvholo::default_dipole_table();
  return params;
}

void bench_four_level_h(benchmark::State& state) {
  const auto params = canonical_four_level();
  double t = -5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(nvholo::four_level_h(params, t));
    t += 1e-6;
  }
}
BENCHMARK(bench_four_level_h);

void bench_nine_level_h(benchmark::State& state) {
  const auto params = canonical_nine_level();
  double t = -5.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(nvholo::nine_level_h(params, t));
    t += 1e-6;
  }
}
BENCHMARK(bench_nine_level_h);

void bench_hermitian_exp(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const auto h = dim == 4 ? nvholo::four_level_h(canonical_four_level(), 0.3)
                          : nvholo::nine_level_h(canonical_nine_level(), 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(nvholo::hermitian_exp(h, 1e-4));
}
BENCHMARK(bench_hermitian_exp)->Arg(4)->Arg(9);

void bench_propagate_unitary(benchmark::State& state) {
  const auto model = nvholo::four_level_model(canonical_four_level());
  nvholo::TimeGrid grid{-6.0, 6.0, static_cast<int>(state.range(0)), 1};
  for (auto _ : state)
    benchmark::DoNotOptimize(nvholo::propagate_unitary(model, grid));
  state.SetItemsProcessed(state.iterations() * grid.steps);
}
BENCHMARK(bench_propagate_unitary)->Arg(2000)->Arg(24000)->Unit(benchmark::kMillisecond);

void bench_dark_transport(benchmark::State& state) {
  const auto params = canonical_four_level();
  nvholo::TimeGrid grid{-6.0, 6.0, static_cast<int>(state.range(0)), 1};
  for (auto _ : state)
    benchmark::DoNotOptimize(nvholo::dark_subspace_propagator(params, grid));
  state.SetItemsProcessed(state.iterations() * grid.steps);
}
BENCHMARK(bench_dark_transport)->Arg(24000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
