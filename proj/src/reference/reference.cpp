#include "lbl2vec/reference.hpp"

#include <algorithm>
#include <cmath>

#include "lbl2vec/error.hpp"
#include "lbl2vec/lof.hpp"

namespace lbl2vec::reference {
namespace {

double cosine(std::span<const float> a, std::span<const double> b) {
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    ab += static_cast<double>(a[j]) * b[j];
    aa += static_cast<double>(a[j]) * a[j];
    bb += b[j] * b[j];
  }
  if (aa == 0.0 || bb == 0.0) return 0.0;
  return std::clamp(ab / (std::sqrt(aa) * std::sqrt(bb)), -1.0, 1.0);
}

}  // namespace

std::vector<double> cosine_to_rows(const Matrix<float>& rows, std::span<const double> query) {
  std::vector<double> out;
  out.reserve(rows.rows());
  for (std::size_t i = 0; i < rows.rows(); ++i) out.push_back(cosine(rows.row(i), query));
  return out;
}

Matrix<double> cosine_matrix(const Matrix<float>& rows, const Matrix<double>& queries) {
  Matrix<double> out(rows.rows(), queries.rows());
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    for (std::size_t j = 0; j < queries.rows(); ++j) out(i, j) = cosine(rows.row(i), queries.row(j));
  }
  return out;
}

std::vector<double> lof_scores(const Matrix<double>& points, int k) {
  const std::size_t n = points.rows();
  if (n < 2) throw ValidationError("LOF needs at least two points");
  if (k < 1) throw ValidationError("LOF k must be >= 1");
  const std::size_t kk = std::min<std::size_t>(static_cast<std::size_t>(k), n - 1);

  Matrix<double> d(n, n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      double acc = 0.0;
      for (std::size_t j = 0; j < points.cols(); ++j) {
        const double diff = points(p, j) - points(q, j);
        acc += diff * diff;
      }
      d(p, q) = std::sqrt(acc);
    }
  }

  // k-distance: k-th smallest distance to another point.
  std::vector<double> kdist(n);
  for (std::size_t p = 0; p < n; ++p) {
    std::vector<double> row;
    for (std::size_t q = 0; q < n; ++q) {
      if (q != p) row.push_back(d(p, q));
    }
    std::sort(row.begin(), row.end());
    kdist[p] = row[kk - 1];
  }

  auto in_neighborhood = [&](std::size_t p, std::size_t q) { return q != p && d(p, q) <= kdist[p]; };

  std::vector<double> lrd(n);
  for (std::size_t p = 0; p < n; ++p) {
    double sum = 0.0;
    std::size_t size = 0;
    for (std::size_t o = 0; o < n; ++o) {
      if (!in_neighborhood(p, o)) continue;
      sum += std::max(kdist[o], d(p, o));
      ++size;
    }
    lrd[p] = sum > 0.0 ? std::min(static_cast<double>(size) / sum, kMaxLocalDensity) : kMaxLocalDensity;
  }

  std::vector<double> scores(n);
  for (std::size_t p = 0; p < n; ++p) {
    double sum = 0.0;
    std::size_t size = 0;
    for (std::size_t o = 0; o < n; ++o) {
      if (!in_neighborhood(p, o)) continue;
      sum += lrd[o] / lrd[p];
      ++size;
    }
    scores[p] = sum / static_cast<double>(size);
  }
  return scores;
}

}  // namespace lbl2vec::reference
