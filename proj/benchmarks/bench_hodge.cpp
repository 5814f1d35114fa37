#include <benchmark/benchmark.h>

#include <random>

#include "curvnf/curvature.hpp"
#include "curvnf/hodge.hpp"
#include "curvnf/zoo.hpp"

using namespace curvnf;

namespace {

Matrix4 random_metric(std::mt19937_64& rng, bool lorentz) {
  std::uniform_real_distribution<double> magnitude(0.25, 4.0);
  Eigen::Vector4d d(magnitude(rng), magnitude(rng), magnitude(rng), magnitude(rng));
  if (lorentz) d[0] = -d[0];
  const Matrix4 q = random_rotation(rng);
  return q * d.asDiagonal() * q.transpose();
}

void BM_HodgeStar(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const Matrix4 g = random_metric(rng, state.range(0) != 0);
  for (auto _ : state) benchmark::DoNotOptimize(hodge_star(g).matrix);
}
BENCHMARK(BM_HodgeStar)->Arg(0)->Arg(1)->ArgName("lorentz");

void BM_OperatorFrom(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const Matrix4 g = random_metric(rng, false);
  const CurvatureTensor rm = space_form(4, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(operator_from(rm, g, OperatorKind::kViaG).matrix);
}
BENCHMARK(BM_OperatorFrom);

void BM_InFrame(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const int n = static_cast<int>(state.range(0));
  const CurvatureTensor rm = space_form(n, 1.0);
  Matrix f = Matrix::Identity(n, n);
  f(0, 1) = 0.3;
  for (auto _ : state) benchmark::DoNotOptimize(rm.in_frame(f));
}
BENCHMARK(BM_InFrame)->Arg(3)->Arg(4)->Arg(5)->Arg(8);

}  // namespace
