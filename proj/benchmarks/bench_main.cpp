#include <numbers>

#include <benchmark/benchmark.h>

#include "kgwave/evolve.hpp"
#include "kgwave/period.hpp"
#include "kgwave/specfun.hpp"
#include "kgwave/spectra.hpp"
#include "kgwave/waves.hpp"

namespace {

using namespace kgwave;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void BM_CompleteKE(benchmark::State& state) {
  double kappa = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(complete_KE(Modulus(kappa)));
    kappa = kappa > 0.9 ? 0.1 : kappa + 1e-3;
  }
}
BENCHMARK(BM_CompleteKE);

void BM_Jacobi(benchmark::State& state) {
  const Modulus m(0.7);
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jacobi(x, m));
    x += 0.01;
  }
}
BENCHMARK(BM_Jacobi);

void BM_PeriodQuadrature(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const double B = 0.5 * energy_bound(k, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(period_quadrature(k, 1.0, B));
}
BENCHMARK(BM_PeriodQuadrature)->Arg(1)->Arg(5);

void BM_HillSpectrum(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  const PeriodicWave w = explicit_phi4(kTwoPi, Modulus(0.5), N);
  for (auto _ : state) benchmark::DoNotOptimize(hill_spectrum(w, N));
}
BENCHMARK(BM_HillSpectrum)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_EvolveStep(benchmark::State& state) {
  const auto N = static_cast<std::size_t>(state.range(0));
  const PeriodicWave w = explicit_phi4(kTwoPi, Modulus(0.5), N);
  FieldState s = seed_traveling(w, *w.params().c, 0.0, PerturbationMode::kGeneric);
  const Evolver ev(N, w.period(), 1);
  const double dt = 0.25 * ev.dx();
  for (auto _ : state) ev.step(s, dt);
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EvolveStep)->Arg(256)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
