#pragma once

#include <cstdint>
#include <utility>

#include "axistour/embedding.hpp"
#include "axistour/numeric.hpp"
#include "axistour/whiten.hpp"

namespace axistour {

struct FastIcaOptions {
  int max_iter = 10000;
  double tol = 1e-10;
  std::uint64_t seed = 0;
};

/// Result of the symmetric fixed-point iteration. `b` maps the whitened input
/// onto the estimated sources (s = z * b) and is orthogonal; axes are flipped
/// so every skewness is non-negative.
struct IcaResult {
  EmbeddingMatrix s;
  Matrix b;
  Vector skewness;
  int iterations_used = 0;
  bool converged = false;
};

/// Parallel FastICA with the log-cosh contrast (unit gain) and symmetric
/// decorrelation. Stops when max_i | |w_i . w_i+| - 1 | < tol. On Gaussian
/// input the result is an arbitrary rotation and `converged` may stay false;
/// that is not an error.
IcaResult fastica(const EmbeddingMatrix& z, const FastIcaOptions& options = {});

/// Biased sample skewness m3 / m2^(3/2) per column. Zero-variance columns
/// raise DegenerateColumn; every column needs at least 3 samples.
Vector column_skewness(const Eigen::Ref<const Matrix>& m);

/// Flips each column whose skewness is negative; zero skewness keeps sign +1.
/// Returns the adjusted matrix and the applied signs.
std::pair<EmbeddingMatrix, Vector> orient_positive_skew(const EmbeddingMatrix& s);

/// Composes the whitening transform with the post-whitening unmixing so that
/// sources = centered_input * result.
Matrix compose_unmixing(const WhiteningModel& model, const Matrix& b_white);

}  // namespace axistour
