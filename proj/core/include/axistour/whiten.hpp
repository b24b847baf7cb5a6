#pragma once

#include <utility>

#include "axistour/embedding.hpp"
#include "axistour/numeric.hpp"

namespace axistour {

/// PCA eigenbasis of the sample covariance. Columns of `components` are
/// orthonormal and ordered by descending eigenvalue; each column is flipped so
/// its largest-magnitude entry is positive.
struct WhiteningModel {
  Vector mean;
  Matrix components;
  Vector eigenvalues;
};

struct WhitenResult {
  EmbeddingMatrix z;
  WhiteningModel model;
};

/// Z = X * components * diag(eigenvalues)^(-1/2). The output has identity
/// sample covariance and doubles as the whitened-PCA baseline (columns in
/// descending eigenvalue order). `eigen_floor` < 0 selects the default
/// 1e-10 * largest eigenvalue.
WhitenResult pca_whiten(const EmbeddingMatrix& x, double eigen_floor = -1.0);

/// Inverse transform: recovers the matrix that produced `z`.
EmbeddingMatrix unwhiten(const EmbeddingMatrix& z, const WhiteningModel& model);

void save_whitening_model(const WhiteningModel& model, const std::filesystem::path& path);
WhiteningModel load_whitening_model(const std::filesystem::path& path);

}  // namespace axistour
