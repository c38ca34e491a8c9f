#pragma once

#include <cmath>
#include <concepts>
#include <cstdint>
#include <span>

#include "lbl2vec/matrix.hpp"

namespace lbl2vec {

/// One term of the negative-sampling objective: the true target has
/// `positive == true`, noise words have `positive == false`.
struct SampleTarget {
  std::uint32_t index = 0;
  bool positive = false;
};

inline double sigmoid(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

/// -log(sigmoid(x)), stable for large |x|.
inline double neg_log_sigmoid(double x) noexcept {
  return std::log1p(std::exp(-std::abs(x))) + (x < 0.0 ? -x : 0.0);
}

/// Loss of the negative-sampling objective for one input vector:
///   -[log s(u_t . v) + sum_n log s(-u_n . v)]
template <std::floating_point T>
double negative_sampling_loss(std::span<const T> input, const Matrix<T>& output,
                              std::span<const SampleTarget> targets) noexcept {
  double loss = 0.0;
  for (const auto& t : targets) {
    const auto u = output.row(t.index);
    double f = 0.0;
    for (std::size_t j = 0; j < input.size(); ++j) f += static_cast<double>(input[j]) * u[j];
    loss += neg_log_sigmoid(t.positive ? f : -f);
  }
  return loss;
}

/// One SGD step on the negative-sampling objective. For every target,
/// g = lr * (label - s(u . v)); the output row moves by g * v and the input
/// accumulates g * u (using output rows before their own update), applied
/// after all targets. `scratch` must have input.size() elements.
/// Returns the loss evaluated before the step.
template <std::floating_point T>
double negative_sampling_update(std::span<T> input, Matrix<T>& output,
                                std::span<const SampleTarget> targets, T lr,
                                std::span<T> scratch) noexcept {
  const std::size_t dim = input.size();
  std::fill(scratch.begin(), scratch.end(), T{0});
  double loss = 0.0;
  for (const auto& t : targets) {
    auto u = output.row(t.index);
    T f = 0;
    for (std::size_t j = 0; j < dim; ++j) f += input[j] * u[j];
    const double label = t.positive ? 1.0 : 0.0;
    loss += neg_log_sigmoid(t.positive ? double(f) : -double(f));
    const T g = static_cast<T>((label - sigmoid(f)) * lr);
    for (std::size_t j = 0; j < dim; ++j) scratch[j] += g * u[j];
    for (std::size_t j = 0; j < dim; ++j) u[j] += g * input[j];
  }
  for (std::size_t j = 0; j < dim; ++j) input[j] += scratch[j];
  return loss;
}

}  // namespace lbl2vec
