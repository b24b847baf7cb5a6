#include <benchmark/benchmark.h>

#include <random>

#include "axistour/embedding.hpp"
#include "axistour/fastica.hpp"
#include "axistour/rng.hpp"
#include "axistour/whiten.hpp"

namespace {

using namespace axistour;

EmbeddingMatrix whitened_laplace(Index n, Index d, std::uint64_t seed) {
  auto rng = make_rng(seed);
  std::uniform_real_distribution<double> uniform(-0.5 + 1e-12, 0.5);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix sources(n, d);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < d; ++j) {
      const double u = uniform(rng);
      sources(i, j) = -(u < 0 ? -1.0 : 1.0) * std::log(1.0 - 2.0 * std::abs(u));
    }
  }
  Matrix mixing(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) mixing(i, j) = gauss(rng);
  }
  EmbeddingMatrix e;
  for (Index i = 0; i < n; ++i) e.vocab.add("w" + std::to_string(i));
  e.data = sources * mixing.transpose();
  return pca_whiten(center_columns(e)).z;
}

void BM_FastIca(benchmark::State& state) {
  const Index n = state.range(0);
  const Index d = state.range(1);
  const EmbeddingMatrix z = whitened_laplace(n, d, 3);
  FastIcaOptions options;
  options.seed = 5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fastica(z, options));
  }
}
BENCHMARK(BM_FastIca)->Args({20000, 10})->Args({50000, 20})->Unit(benchmark::kMillisecond);

}  // namespace
