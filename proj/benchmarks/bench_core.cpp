#include <benchmark/benchmark.h>

#include "altpd/chain.hpp"
#include "altpd/dynamics.hpp"
#include "altpd/oracle.hpp"
#include "altpd/payoff.hpp"
#include "altpd/random.hpp"

using namespace altpd;

namespace {

const PayoffParams kParams(1.0, 0.3);

void BM_BuildMatrix(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  const Strategy p = random_strategy(n, rng), q = random_strategy(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(build_matrix_direct(p, q));
}
BENCHMARK(BM_BuildMatrix)->Arg(1)->Arg(2)->Arg(3)->Arg(4);

void BM_BuildMatrixRecursive(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(1);
  const Strategy p = random_strategy(n, rng), q = random_strategy(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(build_matrix_recursive(p, q));
}
BENCHMARK(BM_BuildMatrixRecursive)->Arg(2)->Arg(3)->Arg(4);

void BM_Stationary(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(2);
  const TransitionMatrix m = build_matrix_direct(random_strategy(n, rng), random_strategy(n, rng));
  for (auto _ : state) benchmark::DoNotOptimize(stationary(m));
}
BENCHMARK(BM_Stationary)->Arg(1)->Arg(2)->Arg(3)->Arg(4);

void BM_PayoffDeterminant(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(3);
  const Strategy p = random_strategy(n, rng), q = random_strategy(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(payoff_by_determinant(p, q, kParams));
}
BENCHMARK(BM_PayoffDeterminant)->Arg(1)->Arg(2)->Arg(3);

void BM_FieldClosedForm(benchmark::State& state) {
  const Point4 x{0.3, 0.6, 0.4, 0.5};
  for (auto _ : state) benchmark::DoNotOptimize(field_closed_form(x, kParams));
}
BENCHMARK(BM_FieldClosedForm);

void BM_FieldNumeric(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(4);
  const Strategy x = random_strategy(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(field_numeric(x.probs(), kParams));
}
BENCHMARK(BM_FieldNumeric)->Arg(1)->Arg(2);

void BM_Simulate(benchmark::State& state) {
  Rng rng(5);
  const Strategy p = random_strategy(1, rng), q = random_strategy(1, rng);
  for (auto _ : state) benchmark::DoNotOptimize(simulate(p, q, kParams, state.range(0), 0, 7));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Simulate)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
