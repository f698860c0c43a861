#include <benchmark/benchmark.h>

#include "vallab/geometry.hpp"
#include "vallab/grassmann.hpp"
#include "vallab/inequalities.hpp"
#include "vallab/mixed_volumes.hpp"
#include "vallab/rng.hpp"

using namespace vallab;

static void BM_HullVolume(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int count = static_cast<int>(state.range(1));
  Rng rng(1);
  std::vector<Eigen::VectorXd> pts;
  for (int i = 0; i < count; ++i) {
    Eigen::VectorXd x(n);
    for (int j = 0; j < n; ++j) x[j] = rng.gauss();
    pts.push_back(std::move(x));
  }
  for (auto _ : state) benchmark::DoNotOptimize(points_volume(n, pts));
}
BENCHMARK(BM_HullVolume)->Args({2, 200})->Args({3, 200})->Args({4, 100});

static void BM_MixedVolume(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(2);
  std::vector<Polytope> bodies;
  for (int i = 0; i < n; ++i) bodies.push_back(random_body(n, BodyKind::RandomHull, rng));
  for (auto _ : state) benchmark::DoNotOptimize(mixed_volume(bodies));
}
BENCHMARK(BM_MixedVolume)->Arg(2)->Arg(3);

static void BM_HighestWeightVector(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  Rng rng(3);
  HighestWeight w = HighestWeight::sign_lemma_weight(n, k, 3);
  Frame e = haar_frame(n, k, rng);
  for (auto _ : state) benchmark::DoNotOptimize(hw_vector(w, e));
}
BENCHMARK(BM_HighestWeightVector)->Args({4, 2})->Args({6, 3});

static void BM_HaarFrame(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Rng rng(4);
  for (auto _ : state) benchmark::DoNotOptimize(haar_frame(n, n / 2, rng));
}
BENCHMARK(BM_HaarFrame)->Arg(4)->Arg(6);

BENCHMARK_MAIN();
