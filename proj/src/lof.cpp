#include "lbl2vec/lof.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "lbl2vec/error.hpp"

namespace lbl2vec {
namespace {

double euclidean(std::span<const double> a, std::span<const double> b) noexcept {
  double acc = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double diff = a[j] - b[j];
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

struct Neighbor {
  std::size_t index;
  double distance;
};

}  // namespace

void LofParams::validate() const {
  if (k < 1) throw ValidationError("LOF k must be >= 1");
  if (!(score_threshold > 0.0)) throw ValidationError("LOF score threshold must be > 0");
}

std::vector<double> lof_scores(const Matrix<double>& points, int k) {
  const std::size_t n = points.rows();
  if (n < 2) throw ValidationError("LOF needs at least two points");
  if (k < 1) throw ValidationError("LOF k must be >= 1");
  const std::size_t kk = std::min<std::size_t>(static_cast<std::size_t>(k), n - 1);
  const auto count = static_cast<std::int64_t>(n);

  std::vector<double> k_distance(n);
  std::vector<std::vector<Neighbor>> neighbors(n);

#pragma omp parallel
  {
    std::vector<double> dist(n);
    std::vector<double> others;
    others.reserve(n - 1);
#pragma omp for schedule(dynamic, 8)
    for (std::int64_t p = 0; p < count; ++p) {
      others.clear();
      for (std::size_t q = 0; q < n; ++q) {
        if (q == static_cast<std::size_t>(p)) continue;
        dist[q] = euclidean(points.row(p), points.row(q));
        others.push_back(dist[q]);
      }
      std::nth_element(others.begin(), others.begin() + (kk - 1), others.end());
      const double kd = others[kk - 1];
      k_distance[p] = kd;
      auto& nb = neighbors[p];
      for (std::size_t q = 0; q < n; ++q) {
        if (q != static_cast<std::size_t>(p) && dist[q] <= kd) nb.push_back({q, dist[q]});
      }
    }
  }

  std::vector<double> lrd(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t p = 0; p < count; ++p) {
    double reach_sum = 0.0;
    for (const auto& o : neighbors[p]) reach_sum += std::max(k_distance[o.index], o.distance);
    const double size = static_cast<double>(neighbors[p].size());
    lrd[p] = reach_sum > 0.0 ? std::min(size / reach_sum, kMaxLocalDensity) : kMaxLocalDensity;
  }

  std::vector<double> scores(n);
#pragma omp parallel for schedule(static)
  for (std::int64_t p = 0; p < count; ++p) {
    double ratio_sum = 0.0;
    for (const auto& o : neighbors[p]) ratio_sum += lrd[o.index] / lrd[p];
    scores[p] = ratio_sum / static_cast<double>(neighbors[p].size());
  }
  return scores;
}

OutlierFilter filter_outliers(const Matrix<double>& points, const LofParams& params) {
  params.validate();
  OutlierFilter result;
  result.scores = lof_scores(points, params.k);
  for (std::size_t i = 0; i < result.scores.size(); ++i) {
    if (result.scores[i] <= params.score_threshold) result.kept.push_back(i);
  }
  if (result.kept.empty()) {
    const auto best = std::min_element(result.scores.begin(), result.scores.end());
    result.kept.push_back(static_cast<std::size_t>(best - result.scores.begin()));
    result.fallback = true;
  }
  return result;
}

}  // namespace lbl2vec
