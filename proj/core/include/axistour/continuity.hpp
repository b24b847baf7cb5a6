#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "axistour/axis_tour.hpp"
#include "axistour/embedding.hpp"
#include "axistour/numeric.hpp"
#include "axistour/viz.hpp"

namespace axistour {

struct HistogramOptions {
  double lo = -0.2;
  double hi = 0.6;
  int bins = 40;
};

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<int> counts;
  int underflow = 0;
  int overflow = 0;
};

/// Adjacent-cosine summary of an axis ordering: the d-1 consecutive cosines,
/// the wrap term, their mean c_[d] and variance, and a histogram of the
/// consecutive values.
struct ContinuityReport {
  Vector adjacent;
  double wrap = 0.0;
  double c_d = 0.0;
  double variance = 0.0;
  Histogram histogram;
};

/// Cosines between consecutive axis embeddings under `order` (length d-1).
Vector adjacent_cosines(const AxisEmbeddingSet& axes, const std::vector<Index>& order);

/// c_[d]: (sum of the d-1 consecutive cosines + wrap cosine) / d.
double average_continuity(const AxisEmbeddingSet& axes, const std::vector<Index>& order);

/// c_I: mean of the b-a within-interval consecutive cosines, no wrap term.
/// Bounds are inclusive and require a < b.
double interval_continuity(const AxisEmbeddingSet& axes, std::pair<Index, Index> interval);

/// d_I: mean distance from the origin of the shown points of a frame.
double scatter_quality(const ProjectionFrame& frame);

/// Monte-Carlo mean/variance of cosines between pairs of independent standard
/// normal vectors (the N(0, 1/d) reference). Requires trials >= 1000.
std::pair<double, double> random_baseline_cosine_stats(Index d, int trials, std::uint64_t seed);

struct KSensitivity {
  std::vector<Index> k1;
  std::vector<Index> k2;
  Matrix c;  // c(k1, k2), row per k1
  Vector m;  // M(k1): row means of c
};

/// Re-evaluates continuity of already-toured matrices with axis embeddings
/// recomputed at each k2.
KSensitivity k_sensitivity(const std::map<Index, EmbeddingMatrix>& toured_by_k1,
                           const std::vector<Index>& k2_list);

/// Spearman correlation between per-axis skewness and the mean of the two
/// neighboring cosines, with cyclic neighbors at the ends.
double skewness_continuity_correlation(const AxisEmbeddingSet& axes,
                                       const std::vector<Index>& order, const Vector& gamma);

ContinuityReport continuity_report(const AxisEmbeddingSet& axes, const std::vector<Index>& order,
                                   const HistogramOptions& options = {});

Histogram make_histogram(const Vector& values, const HistogramOptions& options);

std::vector<Index> identity_order(Index d);

}  // namespace axistour
