// Serial reference kernels against their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "qflag/borelring.hpp"
#include "qflag/quatlab.hpp"

using namespace qflag;

namespace {

Exec mode(const benchmark::State& state) { return state.range(0) ? Exec::parallel : Exec::serial; }

void label(benchmark::State& state) { state.SetLabel(state.range(0) ? "parallel" : "serial"); }

void BM_AssembleConstraints(benchmark::State& state) {
  auto ctx = make_context(4);
  for (auto _ : state) benchmark::DoNotOptimize(assemble_constraints(4, *ctx, kDefaultCellBudget, mode(state)));
  label(state);
}
BENCHMARK(BM_AssembleConstraints)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_GradedComponent(benchmark::State& state) {
  auto ctx = make_context(4);
  for (auto _ : state) benchmark::DoNotOptimize(graded_component(3, *ctx, kDefaultCellBudget, mode(state)));
  label(state);
}
BENCHMARK(BM_GradedComponent)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_ArtinImage(benchmark::State& state) {
  auto ctx = make_context(5);
  for (auto _ : state) benchmark::DoNotOptimize(artin_image_matrix(3, *ctx, mode(state)));
  label(state);
}
BENCHMARK(BM_ArtinImage)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_MeridianSampling(benchmark::State& state) {
  auto hp = HeightParams::standard(4);
  auto w = Permutation::identity(4);
  for (auto _ : state) benchmark::DoNotOptimize(meridian_tangency_check(w, 0, 3, 200, hp, 42, mode(state)));
  label(state);
}
BENCHMARK(BM_MeridianSampling)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
