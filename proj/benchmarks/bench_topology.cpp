#include <benchmark/benchmark.h>

#include <vector>

#include "curvnf/topology.hpp"
#include "curvnf/zoo.hpp"

using namespace curvnf;

namespace {

void BM_PointDensity(benchmark::State& state) {
  const PointSample s = gen_synthetic_star_h({0.5, -1.0, 2.0}, {0.3, -0.1, -0.2},
                                             {1.0, 2.0, 0.5, 1.5}, {2.0, 1.0, 1.0, 0.7},
                                             Matrix4::Identity());
  const CurvatureTensor rm = s.tensor();
  for (auto _ : state) benchmark::DoNotOptimize(point_density(rm, s.g, *s.h).value.chi_density);
}
BENCHMARK(BM_PointDensity);

// Full per-point evaluation on a sphere grid, without any caching.
void BM_IntegrateSphere(benchmark::State& state) {
  const auto samples =
      gen_space_form(4, 1.0, GridSpec{GridKind::kSphere, static_cast<int>(state.range(0)), 1.0});
  for (auto _ : state) {
    std::vector<WeightedDensity> values;
    values.reserve(samples.size());
    for (const auto& s : samples) {
      values.push_back({point_density(s.tensor(), s.g, s.h_or_g()).value, s.weight});
    }
    benchmark::DoNotOptimize(integrate_samples(values).chi);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long long>(samples.size()));
}
BENCHMARK(BM_IntegrateSphere)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_GenerateSphereGrid(benchmark::State& state) {
  const GridSpec grid{GridKind::kSphere, static_cast<int>(state.range(0)), 1.0};
  for (auto _ : state) {
    double total = 0.0;
    gen_space_form(4, 1.0, grid, [&](const PointSample& s) { total += *s.weight; });
    benchmark::DoNotOptimize(total);
  }
}
BENCHMARK(BM_GenerateSphereGrid)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_ConnectedSum(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(connected_sum("CP2 # CP2 # S1xS3 # S1xS3 # HYP(5) # K3").chi);
  }
}
BENCHMARK(BM_ConnectedSum);

}  // namespace

BENCHMARK_MAIN();
