#include "axistour/task_eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "axistour/errors.hpp"
#include "axistour/rng.hpp"
#include "axistour/stats.hpp"

namespace axistour {

namespace {

std::string stem_name(const std::filesystem::path& path) { return path.stem().string(); }

double squared_distance(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b) {
  return (a - b).squaredNorm();
}

struct KMeansRun {
  std::vector<Index> assign;
  double inertia = std::numeric_limits<double>::infinity();
};

KMeansRun kmeans_once(const Matrix& points, Index k, std::uint64_t seed) {
  const Index n = points.rows();
  auto rng = make_rng(seed);

  // k-means++ seeding.
  std::vector<Index> centers;
  centers.reserve(static_cast<std::size_t>(k));
  std::uniform_int_distribution<Index> uniform(0, n - 1);
  centers.push_back(uniform(rng));
  Vector dist2 = (points.rowwise() - points.row(centers[0])).rowwise().squaredNorm();
  while (static_cast<Index>(centers.size()) < k) {
    const double total = dist2.sum();
    Index chosen;
    if (total <= 0.0) {
      chosen = uniform(rng);
    } else {
      std::uniform_real_distribution<double> pick(0.0, total);
      double r = pick(rng);
      chosen = n - 1;
      for (Index i = 0; i < n; ++i) {
        r -= dist2(i);
        if (r <= 0.0) {
          chosen = i;
          break;
        }
      }
    }
    centers.push_back(chosen);
    dist2 = dist2.cwiseMin(
        (points.rowwise() - points.row(chosen)).rowwise().squaredNorm());
  }

  Matrix centroids(k, points.cols());
  for (Index c = 0; c < k; ++c) centroids.row(c) = points.row(centers[static_cast<std::size_t>(c)]);

  KMeansRun run;
  run.assign.assign(static_cast<std::size_t>(n), -1);
  for (int iter = 0; iter < 100; ++iter) {
    bool changed = false;
    for (Index i = 0; i < n; ++i) {
      Index best = 0;
      double best_d = squared_distance(points.row(i).transpose(), centroids.row(0).transpose());
      for (Index c = 1; c < k; ++c) {
        const double d = squared_distance(points.row(i).transpose(), centroids.row(c).transpose());
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (run.assign[static_cast<std::size_t>(i)] != best) {
        run.assign[static_cast<std::size_t>(i)] = best;
        changed = true;
      }
    }
    if (!changed) break;

    centroids.setZero();
    std::vector<Index> counts(static_cast<std::size_t>(k), 0);
    for (Index i = 0; i < n; ++i) {
      centroids.row(run.assign[static_cast<std::size_t>(i)]) += points.row(i);
      ++counts[static_cast<std::size_t>(run.assign[static_cast<std::size_t>(i)])];
    }
    for (Index c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) {
        centroids.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
      } else {
        // Re-seed an empty cluster at the point farthest from its centroid.
        Index far = 0;
        double far_d = -1.0;
        for (Index i = 0; i < n; ++i) {
          const double d = squared_distance(
              points.row(i).transpose(),
              centroids.row(run.assign[static_cast<std::size_t>(i)]).transpose());
          if (d > far_d) {
            far_d = d;
            far = i;
          }
        }
        centroids.row(c) = points.row(far);
      }
    }
  }

  run.inertia = 0.0;
  for (Index i = 0; i < n; ++i) {
    run.inertia += squared_distance(
        points.row(i).transpose(),
        centroids.row(run.assign[static_cast<std::size_t>(i)]).transpose());
  }
  return run;
}

// Agglomerative clustering via Lance-Williams updates on a dense distance
// matrix; returns assignments after cutting at k clusters.
enum class Linkage { ward, average, complete };

std::vector<Index> agglomerative(const Matrix& dist0, Index k, Linkage linkage) {
  const Index n = dist0.rows();
  Matrix dist = dist0;
  std::vector<bool> active(static_cast<std::size_t>(n), true);
  std::vector<double> size(static_cast<std::size_t>(n), 1.0);
  std::vector<std::vector<Index>> members(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) members[static_cast<std::size_t>(i)] = {i};

  Index clusters = n;
  while (clusters > k) {
    Index bi = -1, bj = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Index i = 0; i < n; ++i) {
      if (!active[static_cast<std::size_t>(i)]) continue;
      for (Index j = i + 1; j < n; ++j) {
        if (!active[static_cast<std::size_t>(j)]) continue;
        if (dist(i, j) < best) {
          best = dist(i, j);
          bi = i;
          bj = j;
        }
      }
    }
    // Merge bj into bi.
    const double si = size[static_cast<std::size_t>(bi)];
    const double sj = size[static_cast<std::size_t>(bj)];
    for (Index h = 0; h < n; ++h) {
      if (!active[static_cast<std::size_t>(h)] || h == bi || h == bj) continue;
      const double sh = size[static_cast<std::size_t>(h)];
      double updated = 0.0;
      switch (linkage) {
        case Linkage::average:
          updated = (si * dist(bi, h) + sj * dist(bj, h)) / (si + sj);
          break;
        case Linkage::complete:
          updated = std::max(dist(bi, h), dist(bj, h));
          break;
        case Linkage::ward: {
          const double t = si + sj + sh;
          updated = std::sqrt(std::max(
              0.0, ((si + sh) * dist(bi, h) * dist(bi, h) + (sj + sh) * dist(bj, h) * dist(bj, h) -
                    sh * dist(bi, bj) * dist(bi, bj)) /
                       t));
          break;
        }
      }
      dist(bi, h) = dist(h, bi) = updated;
    }
    size[static_cast<std::size_t>(bi)] += sj;
    auto& mi = members[static_cast<std::size_t>(bi)];
    auto& mj = members[static_cast<std::size_t>(bj)];
    mi.insert(mi.end(), mj.begin(), mj.end());
    mj.clear();
    active[static_cast<std::size_t>(bj)] = false;
    --clusters;
  }

  std::vector<Index> assign(static_cast<std::size_t>(n), -1);
  Index next = 0;
  for (Index i = 0; i < n; ++i) {
    if (!active[static_cast<std::size_t>(i)]) continue;
    for (Index m : members[static_cast<std::size_t>(i)]) {
      assign[static_cast<std::size_t>(m)] = next;
    }
    ++next;
  }
  return assign;
}

Matrix euclidean_distances(const Matrix& points) {
  const Index n = points.rows();
  Matrix dist(n, n);
  for (Index i = 0; i < n; ++i) {
    dist(i, i) = 0.0;
    for (Index j = i + 1; j < n; ++j) {
      dist(i, j) = dist(j, i) = (points.row(i) - points.row(j)).norm();
    }
  }
  return dist;
}

Matrix cosine_distances(const Matrix& points) {
  const Index n = points.rows();
  Matrix dist(n, n);
  for (Index i = 0; i < n; ++i) {
    dist(i, i) = 0.0;
    for (Index j = i + 1; j < n; ++j) {
      const double ni = points.row(i).norm();
      const double nj = points.row(j).norm();
      const double c = (ni > 0 && nj > 0) ? points.row(i).dot(points.row(j)) / (ni * nj) : 0.0;
      dist(i, j) = dist(j, i) = 1.0 - c;
    }
  }
  return dist;
}

}  // namespace

AnalogyDataset load_analogy_dataset(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open analogy dataset: " + path.string());
  AnalogyDataset data;
  data.name = stem_name(path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == ':') continue;
    std::istringstream ss(line);
    AnalogyItem item;
    if (!(ss >> item.w1 >> item.w2 >> item.w3 >> item.w4)) {
      throw DataError("bad analogy line " + std::to_string(line_no) + " in " + path.string());
    }
    data.items.push_back(std::move(item));
  }
  return data;
}

SimilarityDataset load_similarity_dataset(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open similarity dataset: " + path.string());
  SimilarityDataset data;
  data.name = stem_name(path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ss(line);
    SimilarityPair pair;
    if (!(ss >> pair.w1 >> pair.w2 >> pair.score) || !std::isfinite(pair.score)) {
      throw DataError("bad similarity line " + std::to_string(line_no) + " in " + path.string());
    }
    data.pairs.push_back(std::move(pair));
  }
  return data;
}

CategorizationDataset load_categorization_dataset(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open categorization dataset: " + path.string());
  CategorizationDataset data;
  data.name = stem_name(path);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size()) {
      throw DataError("bad categorization line " + std::to_string(line_no) + " in " +
                      path.string());
    }
    data.items.push_back({line.substr(0, tab), line.substr(tab + 1)});
  }
  return data;
}

EvalReport eval_analogy(const EmbeddingMatrix& e, const AnalogyDataset& data) {
  if (data.items.empty()) throw DataError("empty analogy dataset: " + data.name);
  EvalReport report;
  report.task = "analogy";
  report.dataset = data.name;
  report.p = e.cols();
  report.items_total = static_cast<Index>(data.items.size());

  const Vector norms = e.data.rowwise().norm();
  Index correct = 0;
  for (const auto& item : data.items) {
    const auto i1 = e.vocab.find(item.w1);
    const auto i2 = e.vocab.find(item.w2);
    const auto i3 = e.vocab.find(item.w3);
    const auto i4 = e.vocab.find(item.w4);
    if (!i1 || !i2 || !i3 || !i4) continue;
    ++report.items_scored;

    const Vector query =
        e.data.row(*i2).transpose() - e.data.row(*i1).transpose() + e.data.row(*i3).transpose();
    const double qn = query.norm();
    const Vector sims = e.data * query;

    Index best = -1;
    double best_sim = -std::numeric_limits<double>::infinity();
    for (Index c = 0; c < e.rows(); ++c) {
      if (c == *i1 || c == *i2 || c == *i3) continue;
      const double denom = norms(c) * qn;
      const double sim = denom > 0 ? sims(c) / denom : -2.0;
      if (sim > best_sim) {
        best_sim = sim;
        best = c;
      }
    }
    if (best == *i4) ++correct;
  }

  report.coverage = report.items_total
                        ? static_cast<double>(report.items_scored) / report.items_total
                        : 0.0;
  report.score = report.items_scored ? static_cast<double>(correct) / report.items_scored : 0.0;
  return report;
}

EvalReport eval_similarity(const EmbeddingMatrix& e, const SimilarityDataset& data) {
  EvalReport report;
  report.task = "similarity";
  report.dataset = data.name;
  report.p = e.cols();
  report.items_total = static_cast<Index>(data.pairs.size());

  std::vector<double> human, model;
  for (const auto& pair : data.pairs) {
    const auto i1 = e.vocab.find(pair.w1);
    const auto i2 = e.vocab.find(pair.w2);
    if (!i1 || !i2) continue;
    human.push_back(pair.score);
    model.push_back(cosine(e.data.row(*i1).transpose(), e.data.row(*i2).transpose()));
  }
  report.items_scored = static_cast<Index>(human.size());
  report.coverage = report.items_total
                        ? static_cast<double>(report.items_scored) / report.items_total
                        : 0.0;
  if (report.items_scored < 3) {
    throw DataError("similarity dataset " + data.name + " has fewer than 3 scored pairs");
  }
  report.score = spearman(
      Eigen::Map<const Vector>(human.data(), static_cast<Index>(human.size())),
      Eigen::Map<const Vector>(model.data(), static_cast<Index>(model.size())));
  return report;
}

std::vector<Index> kmeans_assign(const Matrix& points, Index k, std::uint64_t seed, int restarts) {
  if (k < 1 || k > points.rows()) throw DataError("kmeans requires 1 <= k <= n");
  KMeansRun best;
  for (int r = 0; r < restarts; ++r) {
    KMeansRun run = kmeans_once(points, k, derive_seed(seed, static_cast<std::uint64_t>(r)));
    if (run.inertia < best.inertia) best = std::move(run);
  }
  return best.assign;
}

double purity(const std::vector<Index>& clusters, const std::vector<Index>& labels, Index k) {
  if (clusters.size() != labels.size() || clusters.empty()) {
    throw DataError("purity: size mismatch");
  }
  Index max_label = 0;
  for (Index l : labels) max_label = std::max(max_label, l);
  std::vector<std::vector<Index>> counts(static_cast<std::size_t>(k),
                                         std::vector<Index>(static_cast<std::size_t>(max_label + 1), 0));
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    ++counts[static_cast<std::size_t>(clusters[i])][static_cast<std::size_t>(labels[i])];
  }
  Index majority_sum = 0;
  for (const auto& row : counts) {
    majority_sum += *std::max_element(row.begin(), row.end());
  }
  return static_cast<double>(majority_sum) / static_cast<double>(clusters.size());
}

EvalReport eval_categorization(const EmbeddingMatrix& e, const CategorizationDataset& data,
                               const CategorizationOptions& options) {
  EvalReport report;
  report.task = "categorization";
  report.dataset = data.name;
  report.p = e.cols();
  report.items_total = static_cast<Index>(data.items.size());

  std::vector<Index> rows;
  std::vector<Index> labels;
  std::map<std::string, Index> label_ids;
  for (const auto& item : data.items) {
    const auto idx = e.vocab.find(item.word);
    if (!idx) continue;
    rows.push_back(*idx);
    auto it = label_ids.emplace(item.label, static_cast<Index>(label_ids.size())).first;
    labels.push_back(it->second);
  }
  report.items_scored = static_cast<Index>(rows.size());
  report.coverage = report.items_total
                        ? static_cast<double>(report.items_scored) / report.items_total
                        : 0.0;
  if (rows.empty()) throw DataError("categorization dataset " + data.name + " fully out of vocabulary");
  const Index k = static_cast<Index>(label_ids.size());
  if (k < 2) throw DataError("categorization dataset " + data.name + " has fewer than 2 classes in vocabulary");

  Matrix points(static_cast<Index>(rows.size()), e.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    points.row(static_cast<Index>(i)) = e.data.row(rows[i]);
  }

  double best = purity(kmeans_assign(points, k, options.seed, options.restarts), labels, k);
  if (options.hierarchical) {
    const Matrix euclid = euclidean_distances(points);
    const Matrix cos = cosine_distances(points);
    for (const auto& [dist, linkage] :
         std::initializer_list<std::pair<const Matrix*, Linkage>>{
             {&euclid, Linkage::ward},
             {&euclid, Linkage::average},
             {&euclid, Linkage::complete},
             {&cos, Linkage::average},
             {&cos, Linkage::complete}}) {
      best = std::max(best, purity(agglomerative(*dist, k, linkage), labels, k));
    }
  }
  report.score = best;
  return report;
}

}  // namespace axistour
