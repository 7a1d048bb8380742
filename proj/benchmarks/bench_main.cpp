#include <benchmark/benchmark.h>

#include "photonwave/currents.hpp"
#include "photonwave/dynamics.hpp"

using namespace photonwave;

namespace {

GridSpec cube(int n) { return GridSpec{{n, n, n}, {2 * M_PI, 2 * M_PI, 2 * M_PI}}; }

void bench_advance_modes(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PhotonField psi = random_field(1, cube(n), {}, 2.5);
  ModeField modes = to_modes(psi);
  for (auto _ : state) {
    advance_modes(modes, OperatorKind::full, 0.02);
    benchmark::DoNotOptimize(modes.modes.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(modes.modes.size()));
}

void bench_fft_roundtrip(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PhotonField psi = random_field(2, cube(n), {}, 2.5);
  for (auto _ : state) {
    const PhotonField back = from_modes(to_modes(psi));
    benchmark::DoNotOptimize(back.values.data());
  }
}

void bench_riesz_tensor(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PhotonField psi = random_field(3, cube(n), {}, 2.5);
  for (auto _ : state) {
    const StressField tau = riesz_tensor(psi);
    benchmark::DoNotOptimize(tau.t.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(psi.size()));
}

void bench_conserved_set(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PhotonField psi = random_field(4, cube(n), {}, 2.5);
  for (auto _ : state) {
    const ConservedSet set = conserved_set(psi);
    benchmark::DoNotOptimize(&set);
  }
}

void bench_equation_residual(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PhotonField psi = random_field(5, cube(n), {}, 2.5);
  for (auto _ : state) {
    const ResidualReport rep = equation_residual(psi);
    benchmark::DoNotOptimize(&rep);
  }
}

}  // namespace

BENCHMARK(bench_advance_modes)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_fft_roundtrip)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_riesz_tensor)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_conserved_set)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(bench_equation_residual)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
