#include "axistour/dimred.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "axistour/errors.hpp"
#include "axistour/fastica.hpp"
#include "axistour/rng.hpp"

namespace axistour {

IntervalPartition make_intervals(Index d, Index p) {
  if (p < 1 || p > d) throw DataError("make_intervals requires 1 <= p <= d");
  IntervalPartition out;
  out.d = d;
  out.p = p;
  const Index base = d / p;
  const Index longer = d % p;
  Index start = 0;
  for (Index r = 0; r < p; ++r) {
    const Index len = base + (r < longer ? 1 : 0);
    out.intervals.emplace_back(start, start + len - 1);
    start += len;
  }
  return out;
}

namespace {

Vector weighted_unit_vector(const Vector& raw, Index d, std::pair<Index, Index> interval) {
  const auto [a, b] = interval;
  Vector out = Vector::Zero(d);
  if (b == a) {
    // Singleton: exactly the basis vector (or its sign in the signed variant).
    out(a) = raw(0) >= 0 ? 1.0 : -1.0;
    if (raw(0) == 0.0) out(a) = 1.0;
    return out;
  }
  const double norm = raw.norm();
  if (norm == 0.0) {
    // Degenerate all-zero interval: alpha -> 0 limit, uniform weights.
    out.segment(a, b - a + 1).setConstant(1.0 / std::sqrt(static_cast<double>(b - a + 1)));
    return out;
  }
  out.segment(a, b - a + 1) = raw / norm;
  return out;
}

}  // namespace

Vector projection_vector(const Vector& gamma, std::pair<Index, Index> interval, double alpha) {
  const auto [a, b] = interval;
  const Index d = gamma.size();
  if (a < 0 || b >= d || a > b) throw DataError("projection interval out of range");
  if (alpha < 0) throw DataError("projection_vector requires alpha >= 0");
  Vector raw(b - a + 1);
  for (Index l = a; l <= b; ++l) {
    if (gamma(l) < 0) throw DataError("projection_vector requires non-negative skewness");
    raw(l - a) = alpha == 0.0 ? 1.0 : std::pow(gamma(l), alpha);
  }
  return weighted_unit_vector(raw, d, interval);
}

Vector signed_projection_vector(const Vector& gamma_signed, std::pair<Index, Index> interval,
                                double alpha) {
  const auto [a, b] = interval;
  const Index d = gamma_signed.size();
  if (a < 0 || b >= d || a > b) throw DataError("projection interval out of range");
  if (alpha < 0) throw DataError("signed_projection_vector requires alpha >= 0");
  Vector raw(b - a + 1);
  for (Index l = a; l <= b; ++l) {
    const double g = gamma_signed(l);
    const double sign = g < 0 ? -1.0 : 1.0;
    raw(l - a) = alpha == 0.0 ? sign : sign * std::pow(std::abs(g), alpha);
  }
  return weighted_unit_vector(raw, d, interval);
}

ProjectionMatrix build_projection(const Vector& gamma, Index p, double alpha,
                                  ProjectionMode mode) {
  const Index d = gamma.size();
  const IntervalPartition partition = make_intervals(d, p);
  ProjectionMatrix out;
  out.alpha = alpha;
  out.mode = mode;
  out.f.resize(d, p);
  for (Index r = 0; r < p; ++r) {
    out.f.col(r) = mode == ProjectionMode::random_order
                       ? signed_projection_vector(gamma, partition.intervals[r], alpha)
                       : projection_vector(gamma, partition.intervals[r], alpha);
  }
  return out;
}

EmbeddingMatrix reduce_dimensions(const EmbeddingMatrix& t, const Vector& gamma, Index p,
                                  double alpha) {
  if (gamma.size() != t.cols()) throw DataError("gamma length does not match column count");
  const ProjectionMatrix projection = build_projection(gamma, p, alpha);
  EmbeddingMatrix out;
  out.vocab = t.vocab;
  out.data = t.data * projection.f;
  out.centered = t.centered;
  out.normalized = false;
  return out;
}

std::vector<Index> skewness_sort_order(const EmbeddingMatrix& s) {
  const Vector gamma = column_skewness(s.data);
  std::vector<Index> order(static_cast<std::size_t>(s.cols()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return gamma(a) > gamma(b);
  });
  return order;
}

std::pair<std::vector<Index>, std::vector<int>> random_order(const EmbeddingMatrix& s,
                                                             std::uint64_t seed) {
  const Index d = s.cols();
  std::vector<Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Index{0});
  auto rng = make_rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> signs(static_cast<std::size_t>(d));
  std::uniform_int_distribution<int> coin(0, 1);
  for (auto& sign : signs) sign = coin(rng) ? 1 : -1;
  return {std::move(order), std::move(signs)};
}

EmbeddingMatrix permute_columns(const EmbeddingMatrix& s, const std::vector<Index>& order,
                                const std::vector<int>* signs) {
  const Index d = s.cols();
  if (static_cast<Index>(order.size()) != d) throw DataError("permutation size mismatch");
  EmbeddingMatrix out;
  out.vocab = s.vocab;
  out.data.resize(s.rows(), d);
  for (Index j = 0; j < d; ++j) {
    out.data.col(j) = s.data.col(order[j]);
    if (signs && (*signs)[static_cast<std::size_t>(j)] < 0) out.data.col(j) *= -1.0;
  }
  out.centered = s.centered;
  out.normalized = s.normalized;
  return out;
}

EmbeddingMatrix prefix_axes(const EmbeddingMatrix& e, Index p) {
  if (p < 1 || p > e.cols()) throw DataError("prefix_axes requires 1 <= p <= d");
  EmbeddingMatrix out;
  out.vocab = e.vocab;
  out.data = e.data.leftCols(p);
  out.centered = e.centered;
  out.normalized = false;
  return out;
}

void save_projection_csv(const ProjectionMatrix& projection, const std::filesystem::path& path) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot write projection file: " + path.string());
  file << "axis";
  for (Index r = 0; r < projection.f.cols(); ++r) file << ",f" << r;
  file << '\n';
  for (Index l = 0; l < projection.f.rows(); ++l) {
    file << l;
    for (Index r = 0; r < projection.f.cols(); ++r) {
      file << ',' << format_double(projection.f(l, r));
    }
    file << '\n';
  }
  if (!file) throw IoError("write failed: " + path.string());
}

}  // namespace axistour
