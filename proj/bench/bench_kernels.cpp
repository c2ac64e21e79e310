// Serial-vs-OpenMP comparison for the data-parallel kernels: rasterization
// and batched pose objectives. Run manually: build/bench/mutualspace_bench

#include <benchmark/benchmark.h>

#include "mutualspace/corpus.hpp"
#include "mutualspace/matching.hpp"
#include "mutualspace/optimizer.hpp"

using namespace mutualspace;

namespace {

geom::PolygonSet bench_set() {
  const eval::Corpus corpus = corpus::builtin_corpus();
  return plan::semantic_map(corpus.hosts[0], plan::Context::Floor).movable_floor;
}

std::vector<geom::Pose> bench_poses(int n) {
  opt::SplitMix64 rng(1);
  std::vector<geom::Pose> poses;
  for (int i = 0; i < n; ++i)
    poses.push_back({rng.uniform(-3, 5), rng.uniform(-3, 5), rng.next_below(4) * geom::kPi / 2});
  return poses;
}

void BM_rasterize_serial(benchmark::State& state) {
  const geom::PolygonSet s = bench_set();
  for (auto _ : state) benchmark::DoNotOptimize(geom::rasterize_serial(s, 0.01).marked_count());
}

void BM_rasterize_omp(benchmark::State& state) {
  const geom::PolygonSet s = bench_set();
  for (auto _ : state) benchmark::DoNotOptimize(geom::rasterize(s, 0.01).marked_count());
}

void BM_batch_objective_serial(benchmark::State& state) {
  const eval::Corpus corpus = corpus::builtin_corpus();
  const match::PairSetup setup =
      match::prepare_pair(corpus.hosts[0], corpus.homes[0], plan::Context::Floor);
  const auto poses = bench_poses(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        match::batch_objective_serial(setup, poses, match::ContextWeights::sa_floor()));
}

void BM_batch_objective_omp(benchmark::State& state) {
  const eval::Corpus corpus = corpus::builtin_corpus();
  const match::PairSetup setup =
      match::prepare_pair(corpus.hosts[0], corpus.homes[0], plan::Context::Floor);
  const auto poses = bench_poses(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        match::batch_objective(setup, poses, match::ContextWeights::sa_floor(), 0));
}

}  // namespace

BENCHMARK(BM_rasterize_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_rasterize_omp)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_batch_objective_serial)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_batch_objective_omp)->Arg(32)->Arg(128)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
