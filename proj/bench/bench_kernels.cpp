// Serial reference against the OpenMP path for the heavy kernels.
#include <benchmark/benchmark.h>

#include "qglab/ergodicity.hpp"
#include "qglab/sweep.hpp"

using namespace qglab;

namespace {

Execution mode(const benchmark::State& state) { return state.range(1) ? Execution::parallel : Execution::serial; }

TreeModel free_model(int grid_n) {
  TreeModel m;
  m.grid_n = grid_n;
  return m;
}

void BM_SymmetricEigen(benchmark::State& state) {
  const Graph g = generate_graph(GraphKind::random_regular, static_cast<int>(state.range(0)), 3, 1);
  const Matrix a = adjacency_matrix(g);
  for (auto _ : state) benchmark::DoNotOptimize(symmetric_eigen(a, true, mode(state)));
}

void BM_BandSpectrum(benchmark::State& state) {
  const Graph g = generate_graph(GraphKind::random_regular, static_cast<int>(state.range(0)), 3, 1);
  const TreeModel m = free_model(256);
  const Band band = select_band(m, 0.0, 45.0, 1);
  const SpectralData spec = adjacency_spectrum(g);
  for (auto _ : state) benchmark::DoNotOptimize(band_spectrum(g, m, band, spec, mode(state)));
}

void BM_KernelVariance(benchmark::State& state) {
  const Graph g = generate_graph(GraphKind::random_regular, static_cast<int>(state.range(0)), 3, 1);
  const TreeModel m = free_model(32);
  const Band band = select_band(m, 0.0, 45.0, 1);
  const auto pairs = band_spectrum(g, m, band);
  const Observable k = generate_observable(ObservableFamily::path_kernel_pm1, g, 32, 2, 1);
  for (auto _ : state) benchmark::DoNotOptimize(quantum_variance(g, m, band, pairs, k, mode(state)));
}

}  // namespace

BENCHMARK(BM_SymmetricEigen)->ArgsProduct({{200, 400}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BandSpectrum)->ArgsProduct({{200, 400}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KernelVariance)->ArgsProduct({{100, 200}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
