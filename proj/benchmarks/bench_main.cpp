#include "mblo/noise.hpp"
#include "mblo/oracle.hpp"
#include "mblo/sampling.hpp"
#include "mblo/synthesis.hpp"

#include <benchmark/benchmark.h>

using namespace mblo;

static void BM_Hafnian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  ComplexMatrix A = ComplexMatrix::Random(n, n);
  A = (A + A.transpose()).eval();
  for (auto _ : state) benchmark::DoNotOptimize(hafnian(A));
}
BENCHMARK(BM_Hafnian)->DenseRange(4, 16, 4);

static void BM_Permanent(benchmark::State& state) {
  const ComplexMatrix W = ComplexMatrix::Random(state.range(0), state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(permanent(W));
}
BENCHMARK(BM_Permanent)->DenseRange(4, 12, 4);

static void BM_ClementsDecompose(benchmark::State& state) {
  const ComplexMatrix U = haar_unitary(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(clements_decompose(U));
}
BENCHMARK(BM_ClementsDecompose)->RangeMultiplier(2)->Range(4, 32);

static void BM_AssembleMblo(benchmark::State& state) {
  const ComplexMatrix U = haar_unitary(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_mblo(U));
}
BENCHMARK(BM_AssembleMblo)->DenseRange(4, 20, 8)->Unit(benchmark::kMillisecond);

static void BM_EvalBrick(benchmark::State& state) {
  const GraphPtr g = graph_brick();
  const PhaseSchedule s = brick_schedule({0.7, 0.3});
  for (auto _ : state) benchmark::DoNotOptimize(eval(*g, s));
}
BENCHMARK(BM_EvalBrick);

static void BM_Sample(benchmark::State& state) {
  const GaussianState st = thermal_state(static_cast<int>(state.range(0)), 0.5);
  for (auto _ : state) benchmark::DoNotOptimize(sample(st, 1000, 3));
}
BENCHMARK(BM_Sample)->Arg(2)->Arg(8);
BENCHMARK_MAIN();
