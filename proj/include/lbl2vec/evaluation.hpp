#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lbl2vec/embedding.hpp"
#include "lbl2vec/labeling.hpp"
#include "lbl2vec/retrieval.hpp"

namespace lbl2vec {

struct Prf {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Micro-averaged precision/recall/F1 over all (topic, document) decisions.
/// `gold` is indexed by doc_id. Rejected documents count as false negatives.
Prf micro_prf(std::span<const Prediction> predictions,
              std::span<const std::optional<std::string>> gold);

struct RocPoint {
  double threshold = 0.0;  // +inf for the (0, 0) origin
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;
  double auc = 0.0;
};

/// Sweeps every distinct score as a threshold (score >= threshold is
/// positive). AUC is the trapezoidal area, which counts tied pairs half.
RocCurve roc_auc(std::span<const double> scores, const std::vector<bool>& is_positive);

struct TopicScores {
  std::string topic;
  std::vector<double> scores;
  std::vector<bool> positive;
};

/// One-vs-rest scores per topic from predictions and gold labels.
std::vector<TopicScores> one_vs_rest(std::span<const Prediction> predictions,
                                     std::span<const std::optional<std::string>> gold);

/// Pools every (score, positive) pair across topics, then runs roc_auc.
RocCurve micro_average_roc(std::span<const TopicScores> topics);

/// Mean cosine over ordered distinct pairs of in-vocabulary keywords.
double intratopic_similarity(const EmbeddingModel& model, const TopicSpec& topic);

/// Mean over other topics of the mean cross-topic keyword cosine.
double intertopic_similarity(const EmbeddingModel& model, const TopicSpec& topic,
                             std::span<const TopicSpec> others);

struct CorrelationResult {
  double tau = 0.0;
  double p_value = 1.0;
  std::size_t n = 0;
};

/// Kendall's tau-b with a two-sided p-value from the tie-adjusted normal
/// approximation.
CorrelationResult kendall_tau(std::span<const double> x, std::span<const double> y);

/// Two-sided p-value for a tie-free tau over n pairs,
/// z = tau / sqrt(2(2n + 5) / (9n(n - 1))).
double kendall_p_value(double tau, std::size_t n);

}  // namespace lbl2vec
