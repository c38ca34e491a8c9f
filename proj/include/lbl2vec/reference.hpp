#pragma once

// Straightforward single-threaded versions of the parallel kernels. Tests
// check the kernels against these and the benchmarks compare their speed.

#include <span>
#include <vector>

#include "lbl2vec/matrix.hpp"

namespace lbl2vec::reference {

std::vector<double> cosine_to_rows(const Matrix<float>& rows, std::span<const double> query);

Matrix<double> cosine_matrix(const Matrix<float>& rows, const Matrix<double>& queries);

/// Materializes the full distance matrix and evaluates LOF directly from
/// its definition.
std::vector<double> lof_scores(const Matrix<double>& points, int k);

}  // namespace lbl2vec::reference
