// Microbenchmarks for the hot paths: local norms, prox-mappings, solver
// steps, and the gap estimator.

#include <benchmark/benchmark.h>

#include <memory>

#include "adaprox/bregman.hpp"
#include "adaprox/finsler.hpp"
#include "adaprox/merit.hpp"
#include "adaprox/oracle.hpp"
#include "adaprox/problems.hpp"
#include "adaprox/solvers.hpp"

using namespace adaprox;

static void BM_DualNormInverseBox(benchmark::State& state) {
  const std::size_t d = state.range(0);
  FinslerMetric metric = FinslerMetric::inverse_box(d);
  Vec x(d, 0.4), w(d, -1.7);
  for (auto _ : state) benchmark::DoNotOptimize(metric.dual_norm(x, w));
}
BENCHMARK(BM_DualNormInverseBox)->Arg(4)->Arg(64);

static void BM_BregmanDivergence(benchmark::State& state) {
  const std::size_t d = state.range(0);
  BregmanFunction h = BregmanFunction::inverse_barrier(d);
  Vec a(d, 0.4), b(d, 0.6);
  for (auto _ : state) benchmark::DoNotOptimize(h.divergence(a, b));
}
BENCHMARK(BM_BregmanDivergence)->Arg(4)->Arg(64);

static void BM_ProxEuclideanBox(benchmark::State& state) {
  const std::size_t d = state.range(0);
  BregmanFunction h = BregmanFunction::half_squared_euclidean(d);
  DomainSpec box = DomainSpec::symmetric_box(d, 1.0);
  Vec x(d, 0.9), y(d, 0.3);
  for (auto _ : state) benchmark::DoNotOptimize(h.prox(box, x, y));
}
BENCHMARK(BM_ProxEuclideanBox)->Arg(4)->Arg(64);

static void BM_ProxBarrierSimplex(benchmark::State& state) {
  const std::size_t d = state.range(0);
  Vec capacities(d, 2.0);
  BregmanFunction h = BregmanFunction::inverse_barrier(d);
  DomainSpec simplex = DomainSpec::capacity_simplex_unit(capacities, double(d));
  Vec x(d, 0.5), y(d, -0.8);
  for (auto _ : state) benchmark::DoNotOptimize(h.prox(simplex, x, y));
}
BENCHMARK(BM_ProxBarrierSimplex)->Arg(3)->Arg(16);

static void BM_AdaproxStepBilinear(benchmark::State& state) {
  const std::size_t d = state.range(0);
  auto p = std::make_shared<VIProblem>(
      make_bilinear(d, 1, Vec(d, 0.0), Vec(d, 0.0), 5.0, 1.0 / double(d)));
  StochasticOracle oracle(p, NoiseSpec::none(), 1);
  FinslerMetric metric = FinslerMetric::euclidean(2 * d);
  BregmanFunction h = BregmanFunction::half_squared_euclidean(2 * d);
  SolverState s = SolverState::start(Vec(2 * d, 2.5), StepPolicy::adaptive());
  for (auto _ : state) benchmark::DoNotOptimize(adaprox_step(s, oracle, metric, h, p->domain()));
}
BENCHMARK(BM_AdaproxStepBilinear)->Arg(10)->Arg(100);

static void BM_AdaproxStepBarrier(benchmark::State& state) {
  const std::size_t d = state.range(0);
  auto p = std::make_shared<VIProblem>(
      to_transformed_coordinates(make_resource_allocation(Vec(d, 2.0), double(d), 0.0)));
  StochasticOracle oracle(p, NoiseSpec::none(), 1);
  FinslerMetric metric = FinslerMetric::inverse_box(d);
  BregmanFunction h = BregmanFunction::inverse_barrier(d);
  SolverState s = SolverState::start(Vec(d, 0.5), StepPolicy::adaptive());
  for (auto _ : state) benchmark::DoNotOptimize(adaprox_step(s, oracle, metric, h, p->domain()));
}
BENCHMARK(BM_AdaproxStepBarrier)->Arg(3)->Arg(16);

static void BM_RestrictedGap(benchmark::State& state) {
  const std::size_t budget = state.range(0);
  VIProblem p = make_bilinear(2, 1, Vec(2, 0.0), Vec(2, 0.0), 1.0, 0.5);
  TestDomain C = TestDomain::full_box(budget);
  Vec candidate(4, 0.25);
  for (auto _ : state) benchmark::DoNotOptimize(restricted_gap(p, C, candidate));
}
BENCHMARK(BM_RestrictedGap)->Arg(512)->Arg(4096);

BENCHMARK_MAIN();
