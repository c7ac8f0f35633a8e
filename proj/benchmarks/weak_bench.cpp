#include <benchmark/benchmark.h>

#include "weakframe/forces.hpp"
#include "weakframe/weak_limits.hpp"

using namespace weakframe;

namespace {

void BM_RefineHelix(benchmark::State& state) {
  const ParamCurve h = helix(1.0, 6.283185307179586);
  for (auto _ : state) benchmark::DoNotOptimize(refine(h, static_cast<std::size_t>(state.range(0)), 64).final_level().tat);
}
BENCHMARK(BM_RefineHelix)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_RefineInflection(benchmark::State& state) {
  const ParamCurve c = inflection_curve();
  for (auto _ : state) benchmark::DoNotOptimize(refine(c, static_cast<std::size_t>(state.range(0)), 64).final_level().tat);
}
BENCHMARK(BM_RefineInflection)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);

void BM_WeakTantrix(benchmark::State& state) {
  const RefinementSequence seq = refine(inflection_curve(), 8, 64);
  for (auto _ : state) benchmark::DoNotOptimize(compute_weak_tantrix(seq).total_length);
}
BENCHMARK(BM_WeakTantrix)->Unit(benchmark::kMillisecond);

void BM_TorsionForce(benchmark::State& state) {
  const ParamCurve c = inflection_curve();
  const WeakIndicatrix t = compute_weak_tantrix(refine(c, 8, 64));
  ForceOptions o;
  o.cells = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(torsion_force(c, t, o).total_variation());
}
BENCHMARK(BM_TorsionForce)->RangeMultiplier(4)->Range(256, 4096)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
