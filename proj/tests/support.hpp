#pragma once

#include <filesystem>
#include <random>
#include <string>

#include "axistour/embedding.hpp"
#include "axistour/numeric.hpp"
#include "axistour/rng.hpp"

namespace testsupport {

using axistour::EmbeddingMatrix;
using axistour::Index;
using axistour::Matrix;
using axistour::Vector;

// Scratch directory removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("axistour_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline axistour::Vocabulary numbered_vocab(Index n, const std::string& prefix = "w") {
  axistour::Vocabulary vocab;
  for (Index i = 0; i < n; ++i) vocab.add(prefix + std::to_string(i));
  return vocab;
}

inline EmbeddingMatrix make_embedding(const Matrix& data, bool centered = false,
                                      bool normalized = false) {
  EmbeddingMatrix e;
  e.vocab = numbered_vocab(data.rows());
  e.data = data;
  e.centered = centered;
  e.normalized = normalized;
  return e;
}

inline Matrix random_gaussian(Index rows, Index cols, std::uint64_t seed, double sigma = 1.0) {
  auto rng = axistour::make_rng(seed);
  std::normal_distribution<double> gauss(0.0, sigma);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) m(i, j) = gauss(rng);
  }
  return m;
}

inline Matrix random_laplace(Index rows, Index cols, std::uint64_t seed) {
  auto rng = axistour::make_rng(seed);
  std::uniform_real_distribution<double> uniform(-0.5 + 1e-12, 0.5);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      const double u = uniform(rng);
      m(i, j) = -(u < 0 ? -1.0 : 1.0) * std::log(1.0 - 2.0 * std::abs(u));
    }
  }
  return m;
}

// Unit-norm rows.
inline Matrix random_unit_vectors(Index count, Index dim, std::uint64_t seed) {
  Matrix m = random_gaussian(count, dim, seed);
  for (Index i = 0; i < count; ++i) m.row(i) /= m.row(i).norm();
  return m;
}

}  // namespace testsupport
