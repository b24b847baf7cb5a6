#include <benchmark/benchmark.h>

#include <random>

#include "axistour/axis_tour.hpp"
#include "axistour/rng.hpp"

namespace {

using namespace axistour;

AxisEmbeddingSet random_axes(Index d, std::uint64_t seed) {
  auto rng = make_rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  AxisEmbeddingSet axes;
  axes.k = 1;
  axes.v.resize(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) axes.v(i, j) = gauss(rng);
    axes.v.row(i) /= axes.v.row(i).norm();
  }
  return axes;
}

void BM_SolveAxisTour(benchmark::State& state) {
  const Index d = state.range(0);
  const AxisEmbeddingSet axes = random_axes(d, 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_axis_tour(axes, 1));
  }
}
BENCHMARK(BM_SolveAxisTour)->Arg(50)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_HeldKarpExact(benchmark::State& state) {
  const Index d = state.range(0);
  const AxisEmbeddingSet axes = random_axes(d, 9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(held_karp_exact(axes));
  }
}
BENCHMARK(BM_HeldKarpExact)->Arg(10)->Arg(13)->Arg(15)->Unit(benchmark::kMillisecond);

}  // namespace
