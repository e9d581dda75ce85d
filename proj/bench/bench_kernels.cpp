// OpenMP kernels against their serial twins. Set OMP_NUM_THREADS to taste.

#include <complex>
#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>

#include "lydeph/experiments.hpp"

namespace {

lydeph::Scenario bench_scenario(int nb) {
  lydeph::Scenario s;
  s.ring = lydeph::IsingRing{nb, 1.0, 0.5, 0.0};
  s.oat = lydeph::OatParameters{6, 0.7, 0.01};
  s.channel = lydeph::Channel::own_bath;
  s.t_max = lydeph::coherence_period(s.channel, 0.01);
  s.steps = 20001;
  return s;
}

void BM_Scenario(benchmark::State& state) {
  const auto s = bench_scenario(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lydeph::run_scenario(s));
  state.SetItemsProcessed(state.iterations() * s.steps);
}

void BM_ScenarioSerial(benchmark::State& state) {
  const auto s = bench_scenario(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(lydeph::run_scenario_serial(s));
  state.SetItemsProcessed(state.iterations() * s.steps);
}

std::vector<double> phase_grid(std::size_t n) {
  std::vector<double> omegas(n);
  for (std::size_t i = 0; i < n; ++i) omegas[i] = 2.0 * std::numbers::pi * i / (n - 1);
  return omegas;
}

void BM_FactorGrid(benchmark::State& state) {
  const auto poly = lydeph::partition_coefficients(lydeph::IsingRing{static_cast<int>(state.range(0)), 1.0, 0.5, 0.0});
  const auto omegas = phase_grid(100000);
  std::vector<std::complex<double>> out(omegas.size());
  for (auto _ : state) {
    lydeph::dephasing_factor_grid(poly, omegas, out);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * omegas.size());
}

void BM_FactorGridSerial(benchmark::State& state) {
  const auto poly = lydeph::partition_coefficients(lydeph::IsingRing{static_cast<int>(state.range(0)), 1.0, 0.5, 0.0});
  const auto omegas = phase_grid(100000);
  std::vector<std::complex<double>> out(omegas.size());
  for (auto _ : state) {
    lydeph::dephasing_factor_grid_serial(poly, omegas, out);
    benchmark::ClobberMemory();
  }
  state.SetItemsProcessed(state.iterations() * omegas.size());
}

void BM_ImprovementGrid(benchmark::State& state) {
  const auto s = lydeph::oat_reduced_state(lydeph::OatParameters{8, 0.45, 0.01});
  for (auto _ : state) benchmark::DoNotOptimize(lydeph::max_improvement_on_grid(s, 8, 1000000));
}

void BM_ImprovementGridSerial(benchmark::State& state) {
  const auto s = lydeph::oat_reduced_state(lydeph::OatParameters{8, 0.45, 0.01});
  for (auto _ : state) benchmark::DoNotOptimize(lydeph::max_improvement_on_grid_serial(s, 8, 1000000));
}

}  // namespace

BENCHMARK(BM_Scenario)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ScenarioSerial)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FactorGrid)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_FactorGridSerial)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ImprovementGrid)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ImprovementGridSerial)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
