#pragma once

#include <filesystem>
#include <utility>
#include <vector>

#include "axistour/embedding.hpp"
#include "axistour/numeric.hpp"

namespace axistour {

/// Two-dimensional projection of a consecutive-axis interval: each axis l in
/// [a, b] maps to the direction (cos t, sin t) with t = (l - a) pi / (b - a).
/// `show` holds the indices of top-5 words with a non-negative vertical
/// coordinate.
struct ProjectionFrame {
  std::pair<Index, Index> interval{0, 0};
  Matrix directions;  // |I| x 2
  Matrix coords;      // n x 2
  std::vector<Index> show;
  // Per word, the interval axis with the highest normalized value (absolute
  // axis index); drives point colors.
  std::vector<Index> argmax_axis;
};

/// Direction matrix for an inclusive interval (a, b) with a < b.
Matrix projection_directions(std::pair<Index, Index> interval);

/// Projects the interval columns of a row-normalized matrix onto the
/// semicircular directions. `top_words_per_axis` feeds the show-set rule.
ProjectionFrame project_2d(const EmbeddingMatrix& t_hat, std::pair<Index, Index> interval,
                           Index top_words_per_axis = 5);

enum class ScatterFormat { svg, csv };

/// SVG: shown points colored by their argmax axis inside the interval and
/// labeled with their (redacted) words; hidden points are omitted. CSV: one
/// "word,x,y,argmax_axis,shown" row per vocabulary entry. Output is
/// byte-stable across runs.
void emit_scatter(const ProjectionFrame& frame, const Vocabulary& vocab, ScatterFormat format,
                  const std::filesystem::path& path);

}  // namespace axistour
