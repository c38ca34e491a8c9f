#include "lbl2vec/retrieval.hpp"

#include <algorithm>
#include <cstdint>

#include "lbl2vec/error.hpp"
#include "lbl2vec/kernels.hpp"

namespace lbl2vec {
namespace {

Matrix<double> label_matrix(std::span<const LabelEmbedding> labels, std::size_t dim) {
  Matrix<double> m(labels.size(), dim);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i].vector.size() != dim) {
      throw DataError("label '" + labels[i].topic + "' has dimension " +
                      std::to_string(labels[i].vector.size()) + ", model has " +
                      std::to_string(dim));
    }
    std::copy(labels[i].vector.begin(), labels[i].vector.end(), m.row(i).begin());
  }
  return m;
}

}  // namespace

double AlphaConfig::alpha_for(const std::string& topic) const {
  const auto it = per_topic.find(topic);
  return it == per_topic.end() ? default_alpha : it->second;
}

void AlphaConfig::validate() const {
  if (!(default_alpha >= -1.0 && default_alpha <= 1.0)) {
    throw ValidationError("alpha must lie in [-1, 1]");
  }
  for (const auto& [topic, a] : per_topic) {
    if (!(a >= -1.0 && a <= 1.0)) {
      throw ValidationError("alpha for topic '" + topic + "' must lie in [-1, 1]");
    }
  }
}

std::vector<TopicScore> score_document(const EmbeddingModel& model,
                                       std::span<const LabelEmbedding> labels,
                                       std::size_t doc_id) {
  if (labels.empty()) throw ValidationError("no labels given");
  const auto doc = model.doc_vector(doc_id);
  std::vector<TopicScore> out;
  out.reserve(labels.size());
  for (const auto& l : labels) {
    if (l.vector.size() != doc.size()) throw DataError("label dimension mismatch: " + l.topic);
    out.push_back({l.topic, cosine_similarity(doc, std::span<const double>(l.vector))});
  }
  return out;
}

std::vector<Hit> retrieve(const EmbeddingModel& model, const LabelEmbedding& label, double alpha) {
  if (!(alpha >= -1.0 && alpha <= 1.0)) throw ValidationError("alpha must lie in [-1, 1]");
  if (label.vector.size() != model.dim()) throw DataError("label dimension mismatch: " + label.topic);
  const auto sims = cosine_to_rows(model.doc_vectors, label.vector);
  std::vector<Hit> hits;
  for (std::size_t i = 0; i < sims.size(); ++i) {
    if (sims[i] > alpha) hits.push_back({static_cast<std::uint32_t>(i), sims[i]});
  }
  std::stable_sort(hits.begin(), hits.end(),
                   [](const Hit& a, const Hit& b) { return a.similarity > b.similarity; });
  return hits;
}

std::vector<Prediction> classify_scores(const Matrix<double>& similarities,
                                        std::span<const std::string> topics,
                                        const AlphaConfig& alphas) {
  if (topics.empty()) throw ValidationError("no labels given");
  if (similarities.cols() != topics.size()) throw ValidationError("score matrix does not match topics");
  alphas.validate();

  std::vector<double> alpha(topics.size());
  for (std::size_t j = 0; j < topics.size(); ++j) alpha[j] = alphas.alpha_for(topics[j]);

  const auto n = static_cast<std::int64_t>(similarities.rows());
  std::vector<Prediction> out(similarities.rows());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto row = similarities.row(i);
    auto& p = out[i];
    p.doc_id = static_cast<std::uint32_t>(i);
    p.scores.reserve(topics.size());
    std::size_t best = 0;
    for (std::size_t j = 0; j < topics.size(); ++j) {
      p.scores.push_back({topics[j], row[j]});
      if (row[j] > row[best]) best = j;
    }
    p.assigned_topic = topics[best];
    p.similarity = row[best];
    p.accepted = row[best] > alpha[best];
  }
  return out;
}

std::vector<Prediction> classify(const EmbeddingModel& model,
                                 std::span<const LabelEmbedding> labels,
                                 const AlphaConfig& alphas) {
  if (labels.empty()) throw ValidationError("no labels given");
  std::vector<std::string> topics;
  topics.reserve(labels.size());
  for (const auto& l : labels) topics.push_back(l.topic);
  const auto sims = cosine_matrix(model.doc_vectors, label_matrix(labels, model.dim()));
  return classify_scores(sims, topics, alphas);
}

}  // namespace lbl2vec
