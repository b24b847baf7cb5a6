#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>

#include "axistour/numeric.hpp"
#include "axistour/vocabulary.hpp"

namespace axistour {

/// A dense word-embedding matrix. Rows follow the vocabulary order; the two
/// flags record which normalizations have been applied.
struct EmbeddingMatrix {
  Vocabulary vocab;
  Matrix data;
  bool centered = false;
  bool normalized = false;

  Index rows() const { return data.rows(); }
  Index cols() const { return data.cols(); }
};

struct LoadOptions {
  std::optional<Index> max_words;
  // Fold tokens to lower case; later duplicates are skipped (first occurrence
  // wins). With the default verbatim policy a duplicate token is an error.
  bool lowercase = false;
};

/// Parses "word v1 v2 ... vd" lines. The dimension is inferred from the first
/// line; every entry must be finite.
EmbeddingMatrix load_text_embeddings(const std::filesystem::path& path,
                                     const LoadOptions& options = {});

/// Writes the same line format with 12 significant digits.
void save_text_embeddings(const EmbeddingMatrix& embedding, const std::filesystem::path& path);

/// Binary cache: magic, version, flags, n, d, vocabulary block, raw row-major
/// doubles. Round-trips exactly.
void save_binary_cache(const EmbeddingMatrix& embedding, const std::filesystem::path& path);
EmbeddingMatrix load_binary_cache(const std::filesystem::path& path);

/// Plain matrix text format: "rows cols" header line, then one row per line.
void save_matrix_text(const Matrix& m, const std::filesystem::path& path);
Matrix load_matrix_text(const std::filesystem::path& path);

void save_vector_csv(const Vector& v, const std::filesystem::path& path,
                     const std::string& value_name);
Vector load_vector_csv(const std::filesystem::path& path);

/// Subtracts each column mean. Requires a not-yet-centered input.
EmbeddingMatrix center_columns(const EmbeddingMatrix& e);

/// Scales every row to unit norm. Rows with norm < 1e-12 raise ZeroNormRow.
EmbeddingMatrix normalize_rows(const EmbeddingMatrix& e);

/// Row-normalized copy of a bare matrix (same ZeroNormRow contract).
Matrix normalize_matrix_rows(const Matrix& m);

}  // namespace axistour
