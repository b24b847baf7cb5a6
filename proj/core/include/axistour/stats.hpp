#pragma once

#include <vector>

#include "axistour/numeric.hpp"

namespace axistour {

/// Ranks in [1, n] with ties replaced by the average rank of the tied run.
Vector average_ranks(const Vector& values);

double pearson(const Vector& a, const Vector& b);

/// Spearman's rank correlation with average-rank tie handling. Throws on
/// constant inputs (the correlation is undefined there).
double spearman(const Vector& a, const Vector& b);

}  // namespace axistour
