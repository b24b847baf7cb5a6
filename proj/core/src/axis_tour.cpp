#include "axistour/axis_tour.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "axistour/errors.hpp"
#include "axistour/redact.hpp"
#include "axistour/rng.hpp"

namespace axistour {

namespace {

constexpr double kImproveEps = 1e-12;

Matrix cosine_matrix(const Matrix& v) {
  const Index d = v.rows();
  Vector norms = v.rowwise().norm();
  for (Index i = 0; i < d; ++i) {
    if (norms(i) < 1e-300) throw DataError("axis embedding " + std::to_string(i) + " is zero");
  }
  Matrix c = v * v.transpose();
  c.array().colwise() /= norms.array();
  c.array().rowwise() /= norms.transpose().array();
  return c;
}

double cycle_score(const std::vector<Index>& tau, const Matrix& cos) {
  const Index d = static_cast<Index>(tau.size());
  double score = 0.0;
  for (Index i = 0; i < d; ++i) {
    score += cos(tau[i], tau[(i + 1) % d]);
  }
  return score;
}

// Rotation/reflection-normalized form, used only to break score ties.
std::vector<Index> canonical_cycle(const std::vector<Index>& tau) {
  const Index d = static_cast<Index>(tau.size());
  Index at0 = static_cast<Index>(
      std::find(tau.begin(), tau.end(), Index{0}) - tau.begin());
  std::vector<Index> fwd(d), bwd(d);
  for (Index i = 0; i < d; ++i) {
    fwd[i] = tau[(at0 + i) % d];
    bwd[i] = tau[(at0 - i % d + d) % d];
  }
  return std::min(fwd, bwd);
}

std::vector<Index> greedy_nearest_neighbor(Index start, const Matrix& cos) {
  const Index d = cos.rows();
  std::vector<Index> tour;
  tour.reserve(d);
  std::vector<bool> used(d, false);
  Index current = start;
  tour.push_back(current);
  used[current] = true;
  for (Index step = 1; step < d; ++step) {
    Index best = -1;
    double best_cos = -std::numeric_limits<double>::infinity();
    for (Index j = 0; j < d; ++j) {
      if (!used[j] && cos(current, j) > best_cos) {
        best_cos = cos(current, j);
        best = j;
      }
    }
    tour.push_back(best);
    used[best] = true;
    current = best;
  }
  return tour;
}

// First-improvement 2-opt over the closed cycle.
bool two_opt_pass(std::vector<Index>& tau, const Matrix& cos) {
  const Index d = static_cast<Index>(tau.size());
  bool improved = false;
  for (Index i = 0; i + 2 <= d - 1; ++i) {
    for (Index j = i + 2; j < d; ++j) {
      if (i == 0 && j == d - 1) continue;  // same pair of edges
      const Index a = tau[i], b = tau[i + 1];
      const Index c = tau[j], e = tau[(j + 1) % d];
      const double delta = cos(a, c) + cos(b, e) - cos(a, b) - cos(c, e);
      if (delta > kImproveEps) {
        std::reverse(tau.begin() + i + 1, tau.begin() + j + 1);
        improved = true;
      }
    }
  }
  return improved;
}

// First-improvement Or-opt: relocate segments of length 1..3, trying both
// orientations at the insertion point.
bool or_opt_pass(std::vector<Index>& tau, const Matrix& cos) {
  const Index d = static_cast<Index>(tau.size());
  bool improved = false;
  for (Index len = 1; len <= 3 && len < d - 1; ++len) {
    for (Index s = 0; s < d; ++s) {
      // Segment occupies positions s .. s+len-1 (cyclic).
      const Index prev = tau[(s - 1 + d) % d];
      const Index first = tau[s];
      const Index last = tau[(s + len - 1) % d];
      const Index next = tau[(s + len) % d];
      const double removal_gain =
          cos(prev, next) - cos(prev, first) - cos(last, next);
      for (Index t = 0; t < d; ++t) {
        // Insert between positions t and t+1; skip slots touching the segment.
        bool inside = false;
        for (Index q = 0; q < len; ++q) {
          if ((s + q) % d == t) inside = true;
        }
        if (inside || (s - 1 + d) % d == t) continue;
        const Index u = tau[t], w = tau[(t + 1) % d];
        const double forward = removal_gain + cos(u, first) + cos(last, w) - cos(u, w);
        const double reversed = removal_gain + cos(u, last) + cos(first, w) - cos(u, w);
        if (std::max(forward, reversed) > kImproveEps) {
          std::vector<Index> segment(len);
          for (Index q = 0; q < len; ++q) segment[q] = tau[(s + q) % d];
          if (reversed > forward) std::reverse(segment.begin(), segment.end());
          std::vector<Index> rest;
          rest.reserve(d - len);
          for (Index q = (s + len) % d; q != s; q = (q + 1) % d) rest.push_back(tau[q]);
          // rest starts at `next`; find u in it and splice the segment after.
          auto pos = std::find(rest.begin(), rest.end(), u);
          rest.insert(pos + 1, segment.begin(), segment.end());
          tau = std::move(rest);
          improved = true;
          // Positions changed wholesale; restart this segment length.
          s = -1;
          break;
        }
      }
    }
  }
  return improved;
}

void local_search(std::vector<Index>& tau, const Matrix& cos) {
  bool improved = true;
  while (improved) {
    improved = false;
    while (two_opt_pass(tau, cos)) improved = true;
    if (or_opt_pass(tau, cos)) improved = true;
  }
}

}  // namespace

std::vector<Index> top_k_indices(const EmbeddingMatrix& s_hat, Index axis, Index k) {
  const Index n = s_hat.rows();
  if (k < 1 || k > n) throw DataError("top_k_indices requires 1 <= k <= n");
  if (axis < 0 || axis >= s_hat.cols()) throw DataError("axis out of range");
  std::vector<Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Index{0});
  const auto column = s_hat.data.col(axis);
  std::partial_sort(idx.begin(), idx.begin() + k, idx.end(), [&](Index a, Index b) {
    if (column(a) != column(b)) return column(a) > column(b);
    return a < b;
  });
  idx.resize(static_cast<std::size_t>(k));
  return idx;
}

AxisEmbeddingSet axis_embeddings(const EmbeddingMatrix& s, Index k) {
  const EmbeddingMatrix s_hat = s.normalized ? s : normalize_rows(s);
  const Index d = s_hat.cols();
  AxisEmbeddingSet out;
  out.k = k;
  out.v.resize(d, d);
  out.top_sets.resize(static_cast<std::size_t>(d));
  for (Index axis = 0; axis < d; ++axis) {
    auto top = top_k_indices(s_hat, axis, k);
    Vector mean = Vector::Zero(d);
    for (Index i : top) mean += s_hat.data.row(i).transpose();
    out.v.row(axis) = mean.transpose() / static_cast<double>(k);
    out.top_sets[static_cast<std::size_t>(axis)] = std::move(top);
  }
  return out;
}

double tour_cost(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na < 1e-300 || nb < 1e-300) throw DataError("tour_cost on zero vector");
  return 1.0 - a.dot(b) / (na * nb);
}

TourOrder solve_axis_tour(const AxisEmbeddingSet& axes, std::uint64_t seed) {
  const Index d = axes.dims();
  if (d < 2) throw DataError("solve_axis_tour requires d >= 2");
  const Matrix cos = cosine_matrix(axes.v);

  std::vector<Index> starts(static_cast<std::size_t>(d));
  std::iota(starts.begin(), starts.end(), Index{0});
  auto rng = make_rng(seed);
  std::shuffle(starts.begin(), starts.end(), rng);
  starts.resize(static_cast<std::size_t>(std::min<Index>(d, 16)));

  TourOrder best;
  std::vector<Index> best_canonical;
  for (Index start : starts) {
    std::vector<Index> tau = greedy_nearest_neighbor(start, cos);
    local_search(tau, cos);
    const double score = cycle_score(tau, cos);
    auto canonical = canonical_cycle(tau);
    if (best.tau.empty() || score > best.score ||
        (score == best.score && canonical < best_canonical)) {
      best.tau = std::move(tau);
      best.score = score;
      best_canonical = std::move(canonical);
    }
  }
  best.anchored = false;
  return best;
}

TourOrder held_karp_exact(const AxisEmbeddingSet& axes) {
  const Index d = axes.dims();
  if (d < 2) throw DataError("held_karp_exact requires d >= 2");
  if (d > 15) throw DataError("held_karp_exact supports d <= 15");
  const Matrix cosm = cosine_matrix(axes.v);
  Matrix cost = Matrix::Constant(d, d, 1.0) - cosm;

  const std::size_t full = std::size_t{1} << d;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dp(full * static_cast<std::size_t>(d), inf);
  std::vector<std::int16_t> parent(full * static_cast<std::size_t>(d), -1);
  auto at = [d](std::size_t mask, Index j) {
    return mask * static_cast<std::size_t>(d) + static_cast<std::size_t>(j);
  };

  dp[at(1u, 0)] = 0.0;
  for (std::size_t mask = 1; mask < full; ++mask) {
    if (!(mask & 1u)) continue;
    for (Index j = 0; j < d; ++j) {
      const double base = dp[at(mask, j)];
      if (base == inf || !(mask & (std::size_t{1} << j))) continue;
      for (Index next = 1; next < d; ++next) {
        if (mask & (std::size_t{1} << next)) continue;
        const std::size_t next_mask = mask | (std::size_t{1} << next);
        const double cand = base + cost(j, next);
        if (cand < dp[at(next_mask, next)]) {
          dp[at(next_mask, next)] = cand;
          parent[at(next_mask, next)] = static_cast<std::int16_t>(j);
        }
      }
    }
  }

  const std::size_t all = full - 1;
  Index last = -1;
  double best_cost = inf;
  for (Index j = 1; j < d; ++j) {
    const double cand = dp[at(all, j)] + cost(j, 0);
    if (cand < best_cost) {
      best_cost = cand;
      last = j;
    }
  }

  TourOrder tour;
  tour.tau.resize(static_cast<std::size_t>(d));
  std::size_t mask = all;
  Index j = last;
  for (Index pos = d - 1; pos > 0; --pos) {
    tour.tau[static_cast<std::size_t>(pos)] = j;
    const Index prev = parent[at(mask, j)];
    mask &= ~(std::size_t{1} << j);
    j = prev;
  }
  tour.tau[0] = 0;
  tour.score = cycle_score(tour.tau, cosm);
  tour.anchored = false;
  return tour;
}

TourOrder anchor_tour(const TourOrder& tour, const AxisEmbeddingSet& axes) {
  const Index d = axes.dims();
  if (static_cast<Index>(tour.tau.size()) != d) throw DataError("tour/axes dimension mismatch");
  const Matrix cos = cosine_matrix(axes.v);

  double min_cos = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < d; ++i) {
    min_cos = std::min(min_cos, cos(tour.tau[i], tour.tau[(i + 1) % d]));
  }
  // All rotations putting a minimum edge at the wrap; ties by smallest tau_1.
  Index best_start = -1;
  for (Index i = 0; i < d; ++i) {
    if (cos(tour.tau[i], tour.tau[(i + 1) % d]) == min_cos) {
      const Index candidate = tour.tau[(i + 1) % d];
      if (best_start < 0 || candidate < tour.tau[best_start]) {
        best_start = (i + 1) % d;
      }
    }
  }

  TourOrder out;
  out.tau.resize(static_cast<std::size_t>(d));
  for (Index i = 0; i < d; ++i) {
    out.tau[i] = tour.tau[(best_start + i) % d];
  }
  out.score = tour.score;
  out.anchored = true;
  return out;
}

EmbeddingMatrix apply_tour(const EmbeddingMatrix& s, const TourOrder& tour) {
  if (!tour.anchored) throw DataError("apply_tour requires an anchored tour");
  const Index d = s.cols();
  if (static_cast<Index>(tour.tau.size()) != d) throw DataError("tour/matrix dimension mismatch");
  EmbeddingMatrix out;
  out.vocab = s.vocab;
  out.data.resize(s.rows(), d);
  for (Index j = 0; j < d; ++j) {
    out.data.col(j) = s.data.col(tour.tau[j]);
  }
  out.centered = s.centered;
  out.normalized = s.normalized;
  return out;
}

std::vector<std::string> top_words(const EmbeddingMatrix& s, const Vocabulary& vocab, Index axis,
                                   Index m) {
  if (m < 1 || m > s.rows()) throw DataError("top_words requires 1 <= m <= n");
  const EmbeddingMatrix s_hat = s.normalized ? s : normalize_rows(s);
  auto top = top_k_indices(s_hat, axis, m);
  std::vector<std::string> words;
  words.reserve(top.size());
  for (Index i : top) {
    words.push_back(redact_token(vocab.word(i)));
  }
  return words;
}

void save_tour(const TourOrder& tour, const std::filesystem::path& path) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot write tour file: " + path.string());
  file << "tau:";
  for (Index i : tour.tau) file << ' ' << i;
  file << '\n';
  file << "score: " << format_double(tour.score, 17) << '\n';
  file << "anchored: " << (tour.anchored ? "true" : "false") << '\n';
  if (!file) throw IoError("write failed: " + path.string());
}

TourOrder load_tour(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open tour file: " + path.string());
  TourOrder tour;
  std::string label;
  std::string line;
  if (!std::getline(file, line)) throw DataError("empty tour file");
  {
    std::istringstream ss(line);
    ss >> label;
    if (label != "tau:") throw DataError("bad tour file: expected tau:");
    Index v;
    while (ss >> v) tour.tau.push_back(v);
  }
  if (!(file >> label >> tour.score) || label != "score:") {
    throw DataError("bad tour file: expected score:");
  }
  std::string anchored;
  if (!(file >> label >> anchored) || label != "anchored:") {
    throw DataError("bad tour file: expected anchored:");
  }
  tour.anchored = anchored == "true";

  // Validate the permutation.
  std::vector<bool> seen(tour.tau.size(), false);
  for (Index v : tour.tau) {
    if (v < 0 || v >= static_cast<Index>(tour.tau.size()) || seen[static_cast<std::size_t>(v)]) {
      throw DataError("tour file does not hold a permutation");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
  return tour;
}

}  // namespace axistour
