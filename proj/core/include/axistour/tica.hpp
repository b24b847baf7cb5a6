#pragma once

#include <cstdint>
#include <vector>

#include "axistour/embedding.hpp"
#include "axistour/numeric.hpp"

namespace axistour {

/// Symmetric banded neighborhood relation built from a rectangular filter of
/// `width` ones convolved twice with itself (rect * rect * rect), truncated at
/// the boundaries (no wrap unless `cyclic`).
struct NeighborhoodMatrix {
  Matrix h;
  Index width = 0;
};

struct TicaOptions {
  Index width = 9;
  int iterations = 1000;
  double step = 0.1;
  std::uint64_t seed = 0;
  bool cyclic = false;
};

struct TicaModel {
  Matrix w;  // d x d decomposition, rows orthonormal
  Index width = 0;
  double beta_half = 0.8;
  double beta_zero = 1.2;
  double step = 0.0;
  int iterations = 0;
  std::vector<double> likelihood_trace;  // [0] is the initialization value
  double max_orthonormality_error = 0.0;
};

/// Variance-field generative model used by the tests: u ~ Exp(1) i.i.d.,
/// z ~ N(0,1) i.i.d., sigma = sqrt(H u) rowwise and s = sigma .* z.
struct SyntheticTopographicSource {
  Matrix u;
  Matrix z;
  Matrix sigma;
  Matrix s;
};

NeighborhoodMatrix neighborhood_matrix(Index d, Index width, bool cyclic = false);

/// Empirical mean over rows of sum_m G(sum_l h_lm s_l^2) with
/// G(y) = -beta_half sqrt(y) + beta_zero.
double approx_log_likelihood(const Matrix& s, const NeighborhoodMatrix& h,
                             double beta_half = 0.8, double beta_zero = 1.2);

/// Gradient ascent on the approximated likelihood with symmetric
/// orthonormalization after every update. Sources are s = z * w^T.
TicaModel tica_fit(const EmbeddingMatrix& z, const TicaOptions& options = {});

/// Extracts the source matrix for a fitted model.
EmbeddingMatrix tica_transform(const EmbeddingMatrix& z, const TicaModel& model);

/// cov(s_l^2, s_{l+1}^2) along the given axis order (length d-1).
Vector higher_order_correlation(const Matrix& s, const std::vector<Index>& order);

SyntheticTopographicSource generate_topographic_sources(Index d, Index n, Index width,
                                                        std::uint64_t seed);

}  // namespace axistour
