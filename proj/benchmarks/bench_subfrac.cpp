#include <benchmark/benchmark.h>

#include "subfrac/bernstein.hpp"
#include "subfrac/fpde.hpp"
#include "subfrac/mc.hpp"
#include "subfrac/models.hpp"
#include "subfrac/rng.hpp"
#include "subfrac/sampler.hpp"

namespace {

using namespace subfrac;

void BM_StableDraw(benchmark::State& state) {
  RngStream rng(7, 0);
  const double beta = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_stable_standard(beta, rng));
}
BENCHMARK(BM_StableDraw)->Arg(3)->Arg(5)->Arg(7);

void BM_InverseExact(benchmark::State& state) {
  const BernsteinChar ch(1.0, 0.0, LevyMeasure::stable(0.5));
  RngStream rng(7, 0);
  for (auto _ : state) benchmark::DoNotOptimize(sample_inverse_killed(ch, 1.0, 1e-3, rng));
}
BENCHMARK(BM_InverseExact);

void BM_InversePath(benchmark::State& state) {
  const BernsteinChar ch(1.0, 0.5, LevyMeasure::stable(0.5));
  const double ds = 1.0 / static_cast<double>(state.range(0));
  RngStream rng(7, 0);
  for (auto _ : state) benchmark::DoNotOptimize(sample_inverse_killed(ch, 1.0, ds, rng));
  state.SetLabel("steps/unit=" + std::to_string(state.range(0)));
}
BENCHMARK(BM_InversePath)->Arg(100)->Arg(1000);

void BM_SolveScalar(benchmark::State& state) {
  const BernsteinChar ch(1.0, 0.0, LevyMeasure::stable(0.5));
  const double dt = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_scalar(ch, 0.5, 1.0, dt));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolveScalar)->Arg(250)->Arg(500)->Arg(1000)->Complexity(benchmark::oNSquared);

void BM_EstimateU(benchmark::State& state) {
  const BernsteinChar ch(0.0, 0.0, LevyMeasure::stable(0.5));
  const MarkovModel model = MarkovModel::eigen(0.5);
  const TestFunction f = test_functions::constant(1.0);
  McParams params;
  params.n = 2000;
  params.workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(estimate_u(ch, model, f, 1.0, 0.0, params));
  state.SetLabel("workers=" + std::to_string(state.range(0)));
}
BENCHMARK(BM_EstimateU)->Arg(1)->Arg(2)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
