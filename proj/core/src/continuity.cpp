#include "axistour/continuity.hpp"

#include <cmath>
#include <numeric>

#include "axistour/errors.hpp"
#include "axistour/rng.hpp"
#include "axistour/stats.hpp"

namespace axistour {

std::vector<Index> identity_order(Index d) {
  std::vector<Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Index{0});
  return order;
}

namespace {

void check_order(const std::vector<Index>& order, Index d) {
  if (static_cast<Index>(order.size()) != d) throw DataError("order size mismatch");
  std::vector<bool> seen(static_cast<std::size_t>(d), false);
  for (Index v : order) {
    if (v < 0 || v >= d || seen[static_cast<std::size_t>(v)]) {
      throw DataError("order is not a permutation");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

}  // namespace

Vector adjacent_cosines(const AxisEmbeddingSet& axes, const std::vector<Index>& order) {
  const Index d = axes.dims();
  check_order(order, d);
  Vector out(d - 1);
  for (Index i = 0; i + 1 < d; ++i) {
    out(i) = cosine(axes.v.row(order[i]).transpose(), axes.v.row(order[i + 1]).transpose());
  }
  return out;
}

double average_continuity(const AxisEmbeddingSet& axes, const std::vector<Index>& order) {
  const Index d = axes.dims();
  const Vector adjacent = adjacent_cosines(axes, order);
  const double wrap =
      cosine(axes.v.row(order[0]).transpose(), axes.v.row(order[d - 1]).transpose());
  return (adjacent.sum() + wrap) / static_cast<double>(d);
}

double interval_continuity(const AxisEmbeddingSet& axes, std::pair<Index, Index> interval) {
  const auto [a, b] = interval;
  if (a >= b) throw DataError("interval_continuity requires a < b");
  if (a < 0 || b >= axes.dims()) throw DataError("interval out of range");
  double sum = 0.0;
  for (Index l = a; l < b; ++l) {
    sum += cosine(axes.v.row(l).transpose(), axes.v.row(l + 1).transpose());
  }
  return sum / static_cast<double>(b - a);
}

double scatter_quality(const ProjectionFrame& frame) {
  if (frame.show.empty()) throw EmptyShowSet();
  double sum = 0.0;
  for (Index i : frame.show) {
    sum += frame.coords.row(i).norm();
  }
  return sum / static_cast<double>(frame.show.size());
}

std::pair<double, double> random_baseline_cosine_stats(Index d, int trials, std::uint64_t seed) {
  if (trials < 1000) throw DataError("random_baseline_cosine_stats requires trials >= 1000");
  auto rng = make_rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector x(d), y(d);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int t = 0; t < trials; ++t) {
    for (Index i = 0; i < d; ++i) x(i) = gauss(rng);
    for (Index i = 0; i < d; ++i) y(i) = gauss(rng);
    const double c = cosine(x, y);
    sum += c;
    sum_sq += c * c;
  }
  const double mean = sum / trials;
  const double variance = sum_sq / trials - mean * mean;
  return {mean, variance};
}

KSensitivity k_sensitivity(const std::map<Index, EmbeddingMatrix>& toured_by_k1,
                           const std::vector<Index>& k2_list) {
  if (toured_by_k1.empty() || k2_list.empty()) throw DataError("k_sensitivity: empty input");
  KSensitivity out;
  out.k2 = k2_list;
  out.c.resize(static_cast<Index>(toured_by_k1.size()), static_cast<Index>(k2_list.size()));
  Index row = 0;
  for (const auto& [k1, toured] : toured_by_k1) {
    out.k1.push_back(k1);
    for (std::size_t col = 0; col < k2_list.size(); ++col) {
      const Index k2 = k2_list[col];
      if (k2 > toured.rows()) throw DataError("k2 exceeds vocabulary size");
      const AxisEmbeddingSet axes = axis_embeddings(toured, k2);
      out.c(row, static_cast<Index>(col)) =
          average_continuity(axes, identity_order(axes.dims()));
    }
    ++row;
  }
  out.m = out.c.rowwise().mean();
  return out;
}

double skewness_continuity_correlation(const AxisEmbeddingSet& axes,
                                       const std::vector<Index>& order, const Vector& gamma) {
  const Index d = axes.dims();
  if (d < 3) throw DataError("skewness_continuity_correlation requires d >= 3");
  check_order(order, d);
  if (gamma.size() != d) throw DataError("gamma length mismatch");

  // gamma is indexed by position in the given order; neighbors are cyclic.
  Vector neighbor_mean(d);
  Vector gamma_ordered(d);
  for (Index i = 0; i < d; ++i) {
    const Index prev = order[(i - 1 + d) % d];
    const Index here = order[i];
    const Index next = order[(i + 1) % d];
    const double left = cosine(axes.v.row(prev).transpose(), axes.v.row(here).transpose());
    const double right = cosine(axes.v.row(here).transpose(), axes.v.row(next).transpose());
    neighbor_mean(i) = 0.5 * (left + right);
    gamma_ordered(i) = gamma(here);
  }
  return spearman(gamma_ordered, neighbor_mean);
}

Histogram make_histogram(const Vector& values, const HistogramOptions& options) {
  if (options.bins < 1 || !(options.hi > options.lo)) throw DataError("bad histogram options");
  Histogram h;
  h.lo = options.lo;
  h.hi = options.hi;
  h.counts.assign(static_cast<std::size_t>(options.bins), 0);
  const double width = (options.hi - options.lo) / options.bins;
  for (Index i = 0; i < values.size(); ++i) {
    const double v = values(i);
    if (v < options.lo) {
      ++h.underflow;
    } else if (v >= options.hi) {
      ++h.overflow;
    } else {
      auto bin = static_cast<std::size_t>((v - options.lo) / width);
      if (bin >= h.counts.size()) bin = h.counts.size() - 1;
      ++h.counts[bin];
    }
  }
  return h;
}

ContinuityReport continuity_report(const AxisEmbeddingSet& axes, const std::vector<Index>& order,
                                   const HistogramOptions& options) {
  const Index d = axes.dims();
  ContinuityReport report;
  report.adjacent = adjacent_cosines(axes, order);
  report.wrap = cosine(axes.v.row(order[0]).transpose(), axes.v.row(order[d - 1]).transpose());
  report.c_d = (report.adjacent.sum() + report.wrap) / static_cast<double>(d);

  // Variance over all d cycle cosines (wrap included), consistent with c_d
  // being their mean.
  double sq = report.wrap * report.wrap;
  for (Index i = 0; i < report.adjacent.size(); ++i) sq += report.adjacent(i) * report.adjacent(i);
  report.variance = sq / static_cast<double>(d) - report.c_d * report.c_d;

  report.histogram = make_histogram(report.adjacent, options);
  return report;
}

}  // namespace axistour
