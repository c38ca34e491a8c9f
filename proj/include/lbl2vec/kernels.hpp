#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "lbl2vec/matrix.hpp"

namespace lbl2vec {

template <typename A, typename B>
double dot(std::span<const A> a, std::span<const B> b) noexcept {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += static_cast<double>(a[i]) * b[i];
  return acc;
}

template <typename A>
double norm(std::span<const A> a) noexcept {
  return std::sqrt(dot(a, a));
}

/// Cosine similarity clamped to [-1, 1]. A zero-norm operand yields 0.
template <typename A, typename B>
double cosine_similarity(std::span<const A> a, std::span<const B> b) noexcept {
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
}

inline double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b) noexcept {
  return cosine_similarity(std::span<const double>(a), std::span<const double>(b));
}

// Parallel kernels (OpenMP). Serial counterparts live in lbl2vec/reference.hpp.

/// Cosine of every row of `rows` against `query`.
std::vector<double> cosine_to_rows(const Matrix<float>& rows, std::span<const double> query);

/// rows x queries matrix of cosines; entry (i, j) = cos(rows[i], queries[j]).
Matrix<double> cosine_matrix(const Matrix<float>& rows, const Matrix<double>& queries);

}  // namespace lbl2vec
