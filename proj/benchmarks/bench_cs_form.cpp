#include <benchmark/benchmark.h>

#include "sasaki/cs_form.hpp"
#include "sasaki/models.hpp"
#include "sasaki/sasakian.hpp"
#include "sasaki/tensor.hpp"

namespace {

struct Fixture {
  sasaki::SasakianPointData data;
  sasaki::DeformedCurvature r_bar;
};

Fixture fixture(sasaki::ModelKind kind, int k) {
  const sasaki::ModelSpec spec{kind, k, 2, 42};
  const sasaki::Chart chart = sasaki::make_chart(spec);
  const auto p = sasaki::sample_points(spec)[1];
  sasaki::SasakianPointData data = sasaki::point_data(chart, p);
  sasaki::DeformedCurvature r_bar = sasaki::deformed_curvature(data, *sasaki::riemann(chart, p).riemann);
  return {std::move(data), std::move(r_bar)};
}

void BM_CurvatureAtPoint(benchmark::State& state) {
  const sasaki::ModelSpec spec{sasaki::ModelKind::sphere, static_cast<int>(state.range(0)), 2, 42};
  const sasaki::Chart chart = sasaki::make_chart(spec);
  const auto p = sasaki::sample_points(spec)[1];
  for (auto _ : state) benchmark::DoNotOptimize(sasaki::riemann(chart, p));
}
BENCHMARK(BM_CurvatureAtPoint)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

// Exact polynomial in rho through the form-valued wedge chain.
void BM_WedgeChain(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const Fixture f = fixture(sasaki::ModelKind::sphere, k);
  for (auto _ : state) benchmark::DoNotOptimize(sasaki::pullback_cs_component(f.r_bar, f.data, k));
}
BENCHMARK(BM_WedgeChain)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

// One rho value through the (4k+1)! signed permutation sum.
void BM_PermutationSum(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const Fixture f = fixture(sasaki::ModelKind::sphere, k);
  const sasaki::DenseTensor at = f.r_bar.r_bar.evaluate(0.7);
  for (auto _ : state)
    benchmark::DoNotOptimize(sasaki::pullback_component_by_permutations(at, f.data, k, 1));
}
BENCHMARK(BM_PermutationSum)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_DenseK(benchmark::State& state) {
  const Fixture f = fixture(sasaki::ModelKind::heisenberg, 1);
  for (auto _ : state) benchmark::DoNotOptimize(sasaki::build_K(f.r_bar, f.data, 1));
}
BENCHMARK(BM_DenseK)->Unit(benchmark::kMillisecond);

void BM_SkewSymmetrizeRank5(benchmark::State& state) {
  sasaki::DenseTensor t(5, std::vector<sasaki::Variance>(5, sasaki::Variance::lower));
  double x = 0.1;
  for (double& c : t.components()) c = (x = x * 1.37 - static_cast<int>(x * 1.37));
  for (auto _ : state) benchmark::DoNotOptimize(sasaki::skew_symmetrize(t, {0, 1, 2, 3, 4}));
}
BENCHMARK(BM_SkewSymmetrizeRank5)->Unit(benchmark::kMicrosecond);

}  // namespace
BENCHMARK_MAIN();
