#include <benchmark/benchmark.h>

#include "cantorcalc/calculus.hpp"
#include "cantorcalc/diffusion.hpp"
#include "cantorcalc/set.hpp"
#include "cantorcalc/staircase.hpp"

using namespace cantorcalc;

namespace {

const CantorParams kTriadic{1.0 / 3.0, RemovalMode::Proportional, 0};

void BM_BuildPrefractal(benchmark::State& state) {
  CantorParams p = kTriadic;
  p.depth = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_prefractal(p));
  }
  state.SetItemsProcessed(state.iterations() << p.depth);
}
BENCHMARK(BM_BuildPrefractal)->Arg(8)->Arg(12)->Arg(16);

void BM_StaircaseEval(benchmark::State& state) {
  const StaircaseEvaluator s(kTriadic);
  double x = 0.0;
  for (auto _ : state) {
    x += 0.618033988749894;
    if (x > 1.0) x -= 1.0;
    benchmark::DoNotOptimize(s(x));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_StaircaseEval);

void BM_StaircaseInverse(benchmark::State& state) {
  const StaircaseEvaluator s(kTriadic);
  double u = 0.0;
  for (auto _ : state) {
    u += 0.618033988749894 * s.total();
    if (u > s.total()) u -= s.total();
    benchmark::DoNotOptimize(s.inverse(u));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_StaircaseInverse);

void BM_RhoSumAligned(benchmark::State& state) {
  const int depth = static_cast<int>(state.range(0));
  CantorParams p = kTriadic;
  p.depth = depth;
  const PreFractal set = build_prefractal(p);
  Subdivision q;
  for (const Interval& iv : set.intervals()) {
    q.points.push_back(iv.left);
    q.points.push_back(iv.right);
  }
  const double zeta = hausdorff_dimension(p.xi);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rho_sum(set, q, zeta));
  }
  state.SetItemsProcessed(state.iterations() << depth);
}
BENCHMARK(BM_RhoSumAligned)->Arg(10)->Arg(14);

void BM_IntegrateSine(benchmark::State& state) {
  const CalculusExample ex = sine_example();
  const StaircaseEvaluator ev(ex.set, ex.zeta);
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(
        ex.set, ev, [&ex](double, double s) { return ex.fn.g(s); }, 0.0, 1.0));
  }
}
BENCHMARK(BM_IntegrateSine)->Unit(benchmark::kMillisecond);

void BM_Propagator(benchmark::State& state) {
  const DiffusionModel model(
      {DiffusionRegime::Super, hausdorff_dimension(1.0 / 3.0), 1.0, 1.0});
  double x = -2.0;
  for (auto _ : state) {
    x += 0.013;
    if (x > 2.0) x = -2.0;
    benchmark::DoNotOptimize(model.propagator(x, 1.0));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Propagator);

void BM_WalkSteps(benchmark::State& state) {
  DiffusionParams params{DiffusionRegime::Super, hausdorff_dimension(1.0 / 3.0),
                         1.0, 1.0};
  params.coefficient = walk_coefficient_hint(DiffusionModel(params), 1.0);
  const DiffusionModel model(params);
  WalkConfig cfg;
  cfg.n_paths = 64;
  cfg.n_steps = static_cast<std::size_t>(state.range(0));
  cfg.dt = 1.0 / static_cast<double>(cfg.n_steps);
  cfg.n_samples = 8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(simulate_walk(model, cfg));
  }
  state.SetItemsProcessed(state.iterations() * cfg.n_paths * cfg.n_steps);
}
BENCHMARK(BM_WalkSteps)->Arg(1024)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
