#include <benchmark/benchmark.h>

#include "dlp/dlp.hpp"
#include "dlp/extalg.hpp"
#include "dlp/generators.hpp"
#include "dlp/qsf.hpp"

namespace {

using namespace dlp;

void BM_SampleRecursive(benchmark::State& state) {
  Rng rng(1);
  int d = static_cast<int>(state.range(0));
  Kernel k = random_kernel(SplitSpace::lines(Field::Complex, d), rng);
  for (auto _ : state) benchmark::DoNotOptimize(sample_recursive(k, rng));
}
BENCHMARK(BM_SampleRecursive)->Arg(4)->Arg(16)->Arg(48);

void BM_Qdet(benchmark::State& state) {
  Rng rng(2);
  int d = static_cast<int>(state.range(0));
  Matrix k = random_hermitian(d, Field::Quaternion, rng);
  for (auto _ : state) benchmark::DoNotOptimize(qdet(k));
}
BENCHMARK(BM_Qdet)->DenseRange(2, 8, 2);

void BM_QdetSpectral(benchmark::State& state) {
  Rng rng(3);
  Matrix k = random_hermitian(static_cast<int>(state.range(0)), Field::Quaternion, rng);
  for (auto _ : state) benchmark::DoNotOptimize(qdet_spectral(k));
}
BENCHMARK(BM_QdetSpectral)->DenseRange(2, 8, 2);

void BM_WedgeOperator(benchmark::State& state) {
  Rng rng(4);
  int d = static_cast<int>(state.range(0));
  Matrix a = gaussian_matrix(d, d, Field::Real, rng);
  for (auto _ : state) benchmark::DoNotOptimize(wedge_operator(a));
}
BENCHMARK(BM_WedgeOperator)->DenseRange(3, 7, 2);

void BM_DlpSample(benchmark::State& state) {
  Rng rng(5);
  SplitSpace s(Field::Complex, {2, 2, 1});
  DlpModel m(random_kernel(s, rng));
  for (auto _ : state) benchmark::DoNotOptimize(sample(m, rng));
}
BENCHMARK(BM_DlpSample);

void BM_UstGrid(benchmark::State& state) {
  Rng rng(6);
  int n = static_cast<int>(state.range(0));
  WeightedGraph g = grid_graph(n, n);
  Connection h = trivial_connection(g, 1);
  for (auto _ : state) benchmark::DoNotOptimize(sample_qsf(g, h, rng));
}
BENCHMARK(BM_UstGrid)->Arg(4)->Arg(6);

}  // namespace
BENCHMARK_MAIN();
