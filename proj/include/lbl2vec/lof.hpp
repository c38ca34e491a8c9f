#pragma once

#include <cstddef>
#include <vector>

#include "lbl2vec/matrix.hpp"

namespace lbl2vec {

struct LofParams {
  int k = 20;
  double score_threshold = 1.5;

  void validate() const;
};

/// Upper bound on local reachability density. Reached when a point and its
/// k-neighbors coincide (mean reachability distance 0).
inline constexpr double kMaxLocalDensity = 1e100;

/// Local Outlier Factor for every row of `points` (Euclidean distance).
/// k is clamped to rows - 1; the neighborhood of a point includes every
/// point tied with its k-distance. Requires at least two points.
std::vector<double> lof_scores(const Matrix<double>& points, int k);

struct OutlierFilter {
  std::vector<std::size_t> kept;  // ascending input order
  std::vector<double> scores;
  bool fallback = false;          // every point exceeded the threshold
};

/// Keeps indices with LOF <= threshold. If none qualify, keeps the single
/// lowest-scoring point and sets `fallback`.
OutlierFilter filter_outliers(const Matrix<double>& points, const LofParams& params);

}  // namespace lbl2vec
