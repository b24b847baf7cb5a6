#include <benchmark/benchmark.h>

#include <random>

#include "axistour/dimred.hpp"
#include "axistour/embedding.hpp"
#include "axistour/rng.hpp"
#include "axistour/tica.hpp"

namespace {

using namespace axistour;

EmbeddingMatrix random_embedding(Index n, Index d, std::uint64_t seed) {
  auto rng = make_rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  EmbeddingMatrix e;
  for (Index i = 0; i < n; ++i) e.vocab.add("w" + std::to_string(i));
  e.data.resize(n, d);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < d; ++j) e.data(i, j) = gauss(rng);
  }
  return e;
}

void BM_ReduceDimensions(benchmark::State& state) {
  const Index n = state.range(0);
  const Index d = 300;
  const Index p = state.range(1);
  const EmbeddingMatrix t = random_embedding(n, d, 11);
  const Vector gamma = Vector::Ones(d) * 0.7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(reduce_dimensions(t, gamma, p, 1.0 / 3.0));
  }
}
BENCHMARK(BM_ReduceDimensions)->Args({100000, 20})->Args({100000, 100})
    ->Unit(benchmark::kMillisecond);

void BM_NeighborhoodMatrix(benchmark::State& state) {
  const Index width = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(neighborhood_matrix(300, width));
  }
}
BENCHMARK(BM_NeighborhoodMatrix)->Arg(9)->Arg(75)->Unit(benchmark::kMillisecond);

}  // namespace
