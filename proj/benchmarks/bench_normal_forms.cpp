#include <benchmark/benchmark.h>

#include <random>

#include "curvnf/einstein.hpp"
#include "curvnf/normal_form3.hpp"
#include "curvnf/normal_form4.hpp"
#include "curvnf/zoo.hpp"

using namespace curvnf;

namespace {

PointSample synthetic(std::mt19937_64& rng) {
  return gen_synthetic_star_h({0.5, -1.0, 2.0}, {0.3, -0.1, -0.2}, {1.0, 2.0, 0.5, 1.5},
                              {2.0, 1.0, 1.0, 0.7}, random_rotation(rng));
}

void BM_StarHEinstein(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const PointSample s = synthetic(rng);
  const CurvatureTensor rm = s.tensor();
  for (auto _ : state) benchmark::DoNotOptimize(is_star_h_einstein(rm, *s.h).einstein);
}
BENCHMARK(BM_StarHEinstein);

void BM_NormalForm4(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const PointSample s = synthetic(rng);
  const CurvatureTensor rm = s.tensor();
  for (auto _ : state) benchmark::DoNotOptimize(normal_form_4(rm, *s.h).lambdas);
}
BENCHMARK(BM_NormalForm4);

void BM_OrthogonalNormalForm(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const PointSample s = synthetic(rng);
  const CurvatureTensor rm = s.tensor();
  for (auto _ : state) benchmark::DoNotOptimize(orthogonal_normal_form(rm, *s.h, s.g).lambdas);
}
BENCHMARK(BM_OrthogonalNormalForm);

void BM_NormalForm3(benchmark::State& state) {
  const CurvatureTensor rm = space_form(3, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(normal_form_3(rm).diag);
}
BENCHMARK(BM_NormalForm3);

void BM_SignedCurvature3(benchmark::State& state) {
  const CurvatureTensor rm = space_form(3, 1.0);
  const int samples = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(signed_curvature_3(rm, samples).sign);
}
BENCHMARK(BM_SignedCurvature3)->Arg(1000)->Arg(10000);

}  // namespace
