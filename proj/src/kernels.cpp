#include "lbl2vec/kernels.hpp"

#include <cstdint>

namespace lbl2vec {

std::vector<double> cosine_to_rows(const Matrix<float>& rows, std::span<const double> query) {
  const auto n = static_cast<std::int64_t>(rows.rows());
  std::vector<double> out(rows.rows());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    out[i] = cosine_similarity(rows.row(i), query);
  }
  return out;
}

Matrix<double> cosine_matrix(const Matrix<float>& rows, const Matrix<double>& queries) {
  const auto n = static_cast<std::int64_t>(rows.rows());
  const std::size_t m = queries.rows();
  std::vector<double> query_norms(m);
  for (std::size_t j = 0; j < m; ++j) query_norms[j] = norm(queries.row(j));

  Matrix<double> out(rows.rows(), m);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto r = rows.row(i);
    const double nr = norm(r);
    for (std::size_t j = 0; j < m; ++j) {
      if (nr == 0.0 || query_norms[j] == 0.0) {
        out(i, j) = 0.0;
      } else {
        out(i, j) = std::clamp(dot(r, queries.row(j)) / (nr * query_norms[j]), -1.0, 1.0);
      }
    }
  }
  return out;
}

}  // namespace lbl2vec
