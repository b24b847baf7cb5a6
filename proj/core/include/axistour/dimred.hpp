#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "axistour/embedding.hpp"
#include "axistour/numeric.hpp"

namespace axistour {

/// Contiguous split of [0, d) into p intervals; the first d mod p intervals
/// hold floor(d/p)+1 axes, the rest floor(d/p). Bounds are inclusive.
struct IntervalPartition {
  Index d = 0;
  Index p = 0;
  std::vector<std::pair<Index, Index>> intervals;
};

enum class ProjectionMode { axis_tour, skewness_sort, random_order };

/// d x p matrix whose column r is the unit projection vector supported on
/// interval r. Entries are non-negative except in random_order mode, where
/// they carry the sign of the skewness.
struct ProjectionMatrix {
  Matrix f;
  double alpha = 0.0;
  ProjectionMode mode = ProjectionMode::axis_tour;
};

IntervalPartition make_intervals(Index d, Index p);

/// Unit vector with support on `interval`, weights proportional to gamma^alpha.
/// If every gamma in the interval is zero (or alpha is 0) the weights fall
/// back to uniform 1/sqrt(|I|).
Vector projection_vector(const Vector& gamma, std::pair<Index, Index> interval, double alpha);

/// Signed variant for axes whose skewness was not flipped positive: weights
/// sgn(gamma) |gamma|^alpha, normalized to unit norm.
Vector signed_projection_vector(const Vector& gamma_signed, std::pair<Index, Index> interval,
                                double alpha);

ProjectionMatrix build_projection(const Vector& gamma, Index p, double alpha,
                                  ProjectionMode mode = ProjectionMode::axis_tour);

/// T * F over make_intervals(d, p): the n x p concatenated projections.
EmbeddingMatrix reduce_dimensions(const EmbeddingMatrix& t, const Vector& gamma, Index p,
                                  double alpha);

/// Permutation ordering axes by descending skewness; ties keep the smaller
/// original index.
std::vector<Index> skewness_sort_order(const EmbeddingMatrix& s);

/// Seeded uniform permutation plus independent +-1 signs per axis.
std::pair<std::vector<Index>, std::vector<int>> random_order(const EmbeddingMatrix& s,
                                                             std::uint64_t seed);

/// Applies a column permutation and per-axis signs (the Random Order baseline).
EmbeddingMatrix permute_columns(const EmbeddingMatrix& s, const std::vector<Index>& order,
                                const std::vector<int>* signs = nullptr);

/// Keeps the first p columns (the prefix baseline for PCA & friends).
EmbeddingMatrix prefix_axes(const EmbeddingMatrix& e, Index p);

void save_projection_csv(const ProjectionMatrix& projection, const std::filesystem::path& path);

}  // namespace axistour
