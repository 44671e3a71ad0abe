#include <algorithm>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "nistab/analysis.hpp"
#include "nistab/plant.hpp"

namespace {

using namespace nistab;

RealMatrix gaussian(std::mt19937_64& rng, Index r, Index c) {
  std::normal_distribution<double> g;
  RealMatrix m(r, c);
  for (Index j = 0; j < c; ++j)
    for (Index i = 0; i < r; ++i) m(i, j) = g(rng);
  return m;
}

// Random stable SISO system; shifted left of its spectral abscissa.
LtiSystem random_system(Index n) {
  std::mt19937_64 rng(static_cast<unsigned>(n));
  RealMatrix a = gaussian(rng, n, n);
  double shift = 0.0;
  for (const Complex& z : eigenvalues(a)) shift = std::max(shift, z.real());
  a -= (shift + 1.0) * RealMatrix::Identity(n, n);
  return LtiSystem(a, gaussian(rng, n, 1), gaussian(rng, 1, n), 0.0);
}

Plant example() {
  RealMatrix a(3, 3), b1(3, 1), b2(3, 1), c1(1, 3);
  a << -1, 0, -1, 1, 0, -1, -1, 2, 1;
  b1 << 1, 1, 1;
  b2 << 0, 1, 1;
  c1 << 1, 1, 0;
  return Plant(a, b1, b2, c1);
}

template <bool Parallel>
void BM_FrequencyResponse(benchmark::State& state) {
  const LtiSystem sys = random_system(state.range(0));
  const std::vector<double> grid = log_grid(1e-4, 1e4, static_cast<std::size_t>(state.range(1)));
  for (auto _ : state) {
    auto g = Parallel ? frequency_response(sys, grid) : frequency_response_serial(sys, grid);
    benchmark::DoNotOptimize(g.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(1));
}

template <bool Parallel>
void BM_SweepEpsilon(benchmark::State& state) {
  const Plant plant = example();
  std::vector<double> grid;
  const auto points = state.range(0);
  for (Index k = 1; k <= points; ++k) grid.push_back(2.0 * static_cast<double>(k) / static_cast<double>(points));
  SweepOptions opts;
  opts.frequency_grid = log_grid(1e-4, 1e4, 500);
  for (auto _ : state) {
    auto prof = Parallel ? sweep_epsilon(plant, grid, opts) : sweep_epsilon_serial(plant, grid, opts);
    benchmark::DoNotOptimize(prof.records.data());
  }
  state.SetItemsProcessed(state.iterations() * points);
}

}  // namespace

BENCHMARK(BM_FrequencyResponse<false>)->Args({8, 2000})->Args({32, 2000})->Args({32, 20000})->Name("freq_serial");
BENCHMARK(BM_FrequencyResponse<true>)->Args({8, 2000})->Args({32, 2000})->Args({32, 20000})->Name("freq_omp");
BENCHMARK(BM_SweepEpsilon<false>)->Arg(32)->Arg(200)->Name("sweep_serial")->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepEpsilon<true>)->Arg(32)->Arg(200)->Name("sweep_omp")->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
