#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "axistour/embedding.hpp"
#include "axistour/numeric.hpp"

namespace axistour {

struct AnalogyItem {
  std::string w1, w2, w3, w4;
};

struct AnalogyDataset {
  std::string name;
  std::vector<AnalogyItem> items;
};

struct SimilarityPair {
  std::string w1, w2;
  double score;
};

struct SimilarityDataset {
  std::string name;
  std::vector<SimilarityPair> pairs;
};

struct CategorizationItem {
  std::string word;
  std::string label;
};

struct CategorizationDataset {
  std::string name;
  std::vector<CategorizationItem> items;
};

struct EvalReport {
  std::string task;     // analogy | similarity | categorization
  std::string dataset;
  std::string method;
  Index p = 0;
  double score = 0.0;     // top-1 accuracy, Spearman rho, or purity
  double coverage = 0.0;  // fraction of items fully in vocabulary
  Index items_scored = 0;
  Index items_total = 0;
};

/// Lines of four whitespace-separated tokens; ":"-prefixed section headers are
/// skipped.
AnalogyDataset load_analogy_dataset(const std::filesystem::path& path);
/// "w1 w2 score" lines.
SimilarityDataset load_similarity_dataset(const std::filesystem::path& path);
/// "word<TAB>label" lines.
CategorizationDataset load_categorization_dataset(const std::filesystem::path& path);

/// Ranks candidates by cosine similarity to y2 - y1 + y3 with the three query
/// words excluded; counts top-1 hits. Items with any out-of-vocabulary token
/// are skipped and reflected in coverage.
EvalReport eval_analogy(const EmbeddingMatrix& e, const AnalogyDataset& data);

/// Spearman correlation between model cosines and human scores over
/// in-vocabulary pairs; needs at least 3 scored pairs.
EvalReport eval_similarity(const EmbeddingMatrix& e, const SimilarityDataset& data);

struct CategorizationOptions {
  std::uint64_t seed = 0;
  int restarts = 10;
  // Also try the five agglomerative settings (euclidean/ward, euclidean/
  // average, euclidean/complete, cosine/average, cosine/complete) and keep
  // the best purity.
  bool hierarchical = false;
};

/// Seeded k-means with `restarts` restarts (best inertia wins); purity of the
/// resulting clustering against the class labels.
EvalReport eval_categorization(const EmbeddingMatrix& e, const CategorizationDataset& data,
                               const CategorizationOptions& options = {});

/// K-means helper used by the evaluator; exposed for tests. Returns cluster
/// assignments for k clusters.
std::vector<Index> kmeans_assign(const Matrix& points, Index k, std::uint64_t seed, int restarts);

double purity(const std::vector<Index>& clusters, const std::vector<Index>& labels, Index k);

}  // namespace axistour
