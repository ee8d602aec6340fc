#include <benchmark/benchmark.h>

#include <random>

#include "ssrsc/dataio.hpp"
#include "ssrsc/projections.hpp"
#include "ssrsc/solvers.hpp"
#include "ssrsc/spectral.hpp"

using namespace ssrsc;

namespace {

Matrix gaussian(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = g(rng);
  return m;
}

void BM_SimplexProjection(benchmark::State& state) {
  const Vector u = gaussian(state.range(0), 1, 1).col(0);
  for (auto _ : state) benchmark::DoNotOptimize(project_scaled_simplex(u, 0.5));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SimplexProjection)->RangeMultiplier(4)->Range(16, 4096)->Complexity();

void BM_GramInverse(benchmark::State& state) {
  const DataMatrix x(gaussian(state.range(0), state.range(1), 2));
  const auto mode = state.range(2) ? GramInverseMode::Woodbury : GramInverseMode::Direct;
  for (auto _ : state) benchmark::DoNotOptimize(regularized_gram_inverse(x, 0.25, mode));
}
BENCHMARK(BM_GramInverse)
    ->ArgNames({"D", "N", "woodbury"})
    ->Args({30, 150, 0})
    ->Args({30, 150, 1})
    ->Args({30, 600, 0})
    ->Args({30, 600, 1});

void BM_SolveSsrsc(benchmark::State& state) {
  const auto data = generate_synthetic(SyntheticSpec{30, 4, 3, static_cast<int>(state.range(0)), 0.01, 3});
  SolverConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(solve_ssrsc(data.data, cfg));
}
BENCHMARK(BM_SolveSsrsc)->Arg(50)->Arg(200);

void BM_SpectralCluster(benchmark::State& state) {
  const auto data = generate_synthetic(SyntheticSpec{30, 4, 3, 50, 0.01, 4});
  const auto z = solve_ssrsc(data.data, SolverConfig{}).coefficients;
  const auto a = build_affinity(z, AffinityMode::Symmetric);
  SpectralConfig sc;
  sc.n_clusters = 3;
  for (auto _ : state) benchmark::DoNotOptimize(spectral_cluster(a, sc));
}
BENCHMARK(BM_SpectralCluster);

}  // namespace

BENCHMARK_MAIN();
