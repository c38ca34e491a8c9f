#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lbl2vec/embedding.hpp"
#include "lbl2vec/lof.hpp"
#include "lbl2vec/matrix.hpp"

namespace lbl2vec {

struct TopicSpec {
  std::string name;
  std::vector<std::string> keywords;
};

/// Throws ValidationError on empty keyword lists or duplicate names.
void validate_topics(std::span<const TopicSpec> topics);

struct LabelParams {
  double s = 0.43;
  std::size_t d_min = 100;
  std::size_t d_max = 0;  // 0 means every document
  LofParams lof;

  std::size_t resolved_d_max(std::size_t doc_count) const noexcept {
    return d_max == 0 ? doc_count : d_max;
  }
  /// Checks ranges against a corpus of `doc_count` documents.
  void validate(std::size_t doc_count) const;
};

struct CandidateSet {
  std::string topic;
  std::vector<std::uint32_t> ranked_candidate_ids;
  std::vector<std::uint32_t> kept_ids;
  std::vector<double> similarities;  // aligned with ranked_candidate_ids
};

struct LabelEmbedding {
  std::string topic;
  std::vector<double> vector;
  std::size_t candidate_count = 0;
  std::size_t kept_count = 0;
  std::vector<std::string> oov_keywords;
};

/// Component-wise arithmetic mean of the rows. Throws on an empty matrix.
std::vector<double> centroid(const Matrix<double>& vectors);

struct KeywordCentroid {
  std::vector<double> vector;
  std::vector<std::string> oov_keywords;
};

/// Centroid of the in-vocabulary keyword vectors. OOV keywords are skipped
/// and reported; a DataError is thrown when all of them are OOV.
KeywordCentroid keyword_centroid(const EmbeddingModel& model, const TopicSpec& topic);

/// Ranks documents by cosine to `query` (descending, ties by doc_id), takes
/// the first d_min unconditionally, then keeps taking while cosine > s, up to
/// d_max. kept_ids is left empty.
CandidateSet select_candidates(const Matrix<float>& doc_vectors, std::span<const double> query,
                               const LabelParams& params);
CandidateSet select_candidates(const EmbeddingModel& model, std::span<const double> query,
                               const LabelParams& params);

struct LabelResult {
  LabelEmbedding label;
  CandidateSet candidates;
  bool lof_fallback = false;
};

/// keyword centroid -> candidates -> LOF cleaning -> centroid of kept documents.
LabelResult compute_label_embedding(const EmbeddingModel& model, const TopicSpec& topic,
                                    const LabelParams& params);

std::vector<LabelResult> compute_label_embeddings(const EmbeddingModel& model,
                                                  std::span<const TopicSpec> topics,
                                                  const LabelParams& params);

}  // namespace lbl2vec
