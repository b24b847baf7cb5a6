#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "axistour/embedding.hpp"
#include "axistour/numeric.hpp"

namespace axistour {

/// The d axis embeddings: row l of `v` is the mean of the k row-normalized
/// word vectors scoring highest on axis l.
struct AxisEmbeddingSet {
  Index k = 0;
  Matrix v;
  std::vector<std::vector<Index>> top_sets;

  Index dims() const { return v.rows(); }
};

/// A closed cycle over the axes. `score` is the sum of cosine similarities
/// over all d cycle edges, including the wrap edge.
struct TourOrder {
  std::vector<Index> tau;
  double score = 0.0;
  bool anchored = false;
};

/// Indices of the k largest values in the given column of a row-normalized
/// matrix, descending; ties broken by smaller word index.
std::vector<Index> top_k_indices(const EmbeddingMatrix& s_hat, Index axis, Index k);

/// Builds all axis embeddings from top-k sets computed on normalize_rows(s).
AxisEmbeddingSet axis_embeddings(const EmbeddingMatrix& s, Index k);

/// TSP edge cost 1 - cos(a, b), in [0, 2].
double tour_cost(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b);

/// Heuristic maximization of the cyclic cosine sum: nearest-neighbor tours
/// from min(d, 16) distinct seeded starts, each polished with 2-opt and Or-opt
/// (segment lengths 1-3) until locally optimal. Deterministic for a fixed
/// seed; the best score wins, ties by lexicographically smallest cycle.
TourOrder solve_axis_tour(const AxisEmbeddingSet& axes, std::uint64_t seed);

/// Provably optimal cycle by dynamic programming over subsets; d <= 15 only.
TourOrder held_karp_exact(const AxisEmbeddingSet& axes);

/// Rotates the cycle so the minimum-cosine edge becomes the wrap between the
/// last and first positions. Ties pick the smallest resulting first axis.
TourOrder anchor_tour(const TourOrder& tour, const AxisEmbeddingSet& axes);

/// Permutes the columns: output column l is input column tau[l]. Requires an
/// anchored tour of matching dimension.
EmbeddingMatrix apply_tour(const EmbeddingMatrix& s, const TourOrder& tour);

/// Top-m words of an axis by normalized value, descending, with URL/email/
/// phone-shaped tokens redacted for display.
std::vector<std::string> top_words(const EmbeddingMatrix& s, const Vocabulary& vocab, Index axis,
                                   Index m);

void save_tour(const TourOrder& tour, const std::filesystem::path& path);
TourOrder load_tour(const std::filesystem::path& path);

}  // namespace axistour
