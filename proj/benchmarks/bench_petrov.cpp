#include <benchmark/benchmark.h>

#include <random>

#include "curvnf/petrov.hpp"
#include "curvnf/zoo.hpp"

using namespace curvnf;

namespace {

PointSample instance(int case_id) {
  std::mt19937_64 rng(static_cast<unsigned>(case_id));
  const StarLBlocks b = blocks_from_complex(random_case_matrix(case_id, rng));
  return gen_synthetic_star_l(b.a, b.b);
}

void BM_ClassifyComplex(benchmark::State& state) {
  const PointSample s = instance(static_cast<int>(state.range(0)));
  const CurvatureTensor rm = s.tensor();
  for (auto _ : state) benchmark::DoNotOptimize(classify_complex(rm, s.g, *s.t).case_id);
}
BENCHMARK(BM_ClassifyComplex)->DenseRange(1, 4)->ArgName("case");

void BM_CountSpacelikeCritical(benchmark::State& state) {
  const PointSample s = instance(static_cast<int>(state.range(0)));
  const CurvatureTensor rm = s.tensor();
  SearchOptions options;
  options.starts = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(count_spacelike_critical(rm, s.g, *s.t, 1e-9, options).count);
  }
}
BENCHMARK(BM_CountSpacelikeCritical)
    ->ArgsProduct({{1, 2, 3, 4}, {16, 64}})
    ->ArgNames({"case", "starts"})
    ->Unit(benchmark::kMillisecond);

}  // namespace
