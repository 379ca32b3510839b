// Microbenchmarks for the hot paths: bump evaluation, theta quadrature,
// fixed-point inversion, one action step, and a marked-point exponent sample.

#include <benchmark/benchmark.h>

#include "tclab/cocycle.hpp"
#include "tclab/ergodic.hpp"
#include "tclab/lyapunov.hpp"
#include "tclab/timechange.hpp"

namespace {

using namespace tclab;

TimeChangedAction make_default_action() {
  const FlowSpec spec = FlowSpec::make({{{2, 1}, {1, 1}}}, 0.2, {1, 0});
  BumpSpec bump = make_bump_spec(spec, 0.05, 0.1, make_orbit(spec, {0, 0, 1}),
                                 make_orbit(spec, {2, 1, 5}));
  TimeChangedAction tca;
  tca.spec1 = spec;
  tca.spec2 = spec;
  tca.cocycle = CocycleSpec{bump, bump, 1e-2, Coupling::both};
  return tca;
}

void BM_BumpValue(benchmark::State& state) {
  const TimeChangedAction tca = make_default_action();
  Rng rng(1);
  std::vector<SuspensionPoint> points;
  for (int i = 0; i < 512; ++i) {
    SuspensionPoint x{{rng.uniform(), rng.uniform()}, 0.0};
    x.tau = rng.uniform() * tca.spec1.roof(x.base);
    points.push_back(x);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tca.cocycle.bump1.value(tca.spec1, points[i++ & 511]));
  }
}
BENCHMARK(BM_BumpValue);

void BM_Flow(benchmark::State& state) {
  const FlowSpec spec = FlowSpec::make({{{2, 1}, {1, 1}}}, 0.2, {1, 0});
  SuspensionPoint x{{0.11, 0.37}, 0.2};
  for (auto _ : state) {
    x = flow(spec, 0.37, x);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_Flow);

void BM_Theta(benchmark::State& state) {
  const TimeChangedAction tca = make_default_action();
  const SuspensionPoint x{{0.31, 0.64}, 0.2};
  const double t = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(theta(tca.spec1, tca.cocycle.bump1, t, x, 1e-2));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Theta)->Arg(1)->Arg(5)->Arg(50);

void BM_PhiInversion(benchmark::State& state) {
  const TimeChangedAction tca = make_default_action();
  const MarkedPoints mp = marked_points(tca);
  const Vec2 a{3.0, -2.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(phi(tca, a, mp.x));
  }
}
BENCHMARK(BM_PhiInversion);

void BM_ActStep(benchmark::State& state) {
  const TimeChangedAction tca = make_default_action();
  ProductPoint x{{{0.31, 0.64}, 0.2}, {{0.52, 0.17}, 0.4}};
  const Vec2 step{0.05, 0.0};
  for (auto _ : state) {
    x = act(tca, step, x);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_ActStep);

void BM_MarkedExponentSample(benchmark::State& state) {
  const TimeChangedAction tca = make_default_action();
  const MarkedPoints mp = marked_points(tca);
  const Vec2 a{0.6, 0.8};
  const double T = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        finite_time_exponent(tca, a, mp.x, CoarseLabel::unstable1, T));
  }
}
BENCHMARK(BM_MarkedExponentSample)->Arg(50)->Arg(200);

}  // namespace

BENCHMARK_MAIN();
