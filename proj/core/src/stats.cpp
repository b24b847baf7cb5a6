#include "axistour/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "axistour/errors.hpp"

namespace axistour {

Vector average_ranks(const Vector& values) {
  const Index n = values.size();
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(),
            [&](Index a, Index b) { return values(a) < values(b); });
  Vector ranks(n);
  Index i = 0;
  while (i < n) {
    Index j = i;
    while (j + 1 < n && values(order[j + 1]) == values(order[i])) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (Index k = i; k <= j; ++k) ranks(order[k]) = avg;
    i = j + 1;
  }
  return ranks;
}

double pearson(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw DataError("pearson: length mismatch");
  if (a.size() < 2) throw DataError("pearson: need at least 2 samples");
  const Vector ac = a.array() - a.mean();
  const Vector bc = b.array() - b.mean();
  const double denom = ac.norm() * bc.norm();
  if (denom == 0.0) throw DataError("pearson: constant input");
  return ac.dot(bc) / denom;
}

double spearman(const Vector& a, const Vector& b) {
  return pearson(average_ranks(a), average_ranks(b));
}

}  // namespace axistour
