#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "kcl/fv_scheme.hpp"
#include "kcl/geometry_state.hpp"
#include "kcl/scenarios.hpp"

using namespace kcl;

static void BM_SolveMach(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> mach(1.0 + 1e-6, 2.0);
  std::vector<double> kappa(1024);
  for (double& k : kappa) k = energy_kernel(mach(rng));
  std::size_t n = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_mach(kappa[n++ & 1023]));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SolveMach);

static void BM_RecoverPrimitives(benchmark::State& state) {
  const ConservedState w =
      conserved_from_primitives(make_primitive({1, 0.2, 0.4}, {-0.1, 1, 0.3}, 1.2, 0.2), ModelKind::Srt);
  for (auto _ : state) {
    benchmark::DoNotOptimize(recover_primitives(w, ModelKind::Srt));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_RecoverPrimitives);

static void BM_Rk2Step(benchmark::State& state) {
  ScenarioConfig c = default_scenario(ScenarioKind::PeriodicPulse);
  c.grid.n1 = static_cast<int>(state.range(0));
  c.grid.n2 = static_cast<int>(state.range(0));
  ScenarioState s = build(c);
  const SchemeConfig scheme;
  const double dt = 0.1 * cfl_dt(s.field, c.model, scheme);
  for (auto _ : state) {
    benchmark::DoNotOptimize(rk2_step(s.field, &s.ct, dt, c.model, scheme));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_Rk2Step)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
