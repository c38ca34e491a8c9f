#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lbl2vec/embedding.hpp"
#include "lbl2vec/labeling.hpp"

namespace lbl2vec {

struct TopicScore {
  std::string topic;
  double similarity = 0.0;
};

struct Prediction {
  std::uint32_t doc_id = 0;
  std::vector<TopicScore> scores;  // label-list order
  std::optional<std::string> assigned_topic;
  double similarity = 0.0;  // score of the assigned topic
  bool accepted = false;
};

struct AlphaConfig {
  std::map<std::string, double> per_topic;
  double default_alpha = -1.0;

  double alpha_for(const std::string& topic) const;
  void validate() const;
};

struct Hit {
  std::uint32_t doc_id = 0;
  double similarity = 0.0;
};

/// Cosine of one document against every label, in label order.
std::vector<TopicScore> score_document(const EmbeddingModel& model,
                                       std::span<const LabelEmbedding> labels,
                                       std::size_t doc_id);

/// Documents with cosine > alpha, by descending similarity then doc_id.
std::vector<Hit> retrieve(const EmbeddingModel& model, const LabelEmbedding& label, double alpha);

/// Assigns each document the most similar topic (ties go to the earlier
/// label) and accepts the assignment only when the similarity exceeds that
/// topic's alpha. Rejected documents are returned with accepted == false.
std::vector<Prediction> classify(const EmbeddingModel& model,
                                 std::span<const LabelEmbedding> labels,
                                 const AlphaConfig& alphas);

/// Same decision rule on a precomputed doc x label similarity matrix.
std::vector<Prediction> classify_scores(const Matrix<double>& similarities,
                                        std::span<const std::string> topics,
                                        const AlphaConfig& alphas);

}  // namespace lbl2vec
