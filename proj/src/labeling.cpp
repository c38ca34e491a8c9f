#include "lbl2vec/labeling.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "lbl2vec/error.hpp"
#include "lbl2vec/kernels.hpp"

namespace lbl2vec {

void validate_topics(std::span<const TopicSpec> topics) {
  if (topics.empty()) throw ValidationError("no topics defined");
  std::set<std::string> names;
  for (const auto& t : topics) {
    if (t.keywords.empty()) throw ValidationError("topic '" + t.name + "' has no keywords");
    if (!names.insert(t.name).second) throw ValidationError("duplicate topic name '" + t.name + "'");
  }
}

void LabelParams::validate(std::size_t doc_count) const {
  if (!(s >= -1.0 && s <= 1.0)) throw ValidationError("s must lie in [-1, 1]");
  if (d_min < 1) throw ValidationError("d_min must be >= 1");
  const std::size_t dmax = resolved_d_max(doc_count);
  if (dmax < d_min) throw ValidationError("d_max must be >= d_min");
  if (dmax > doc_count) {
    throw ValidationError("d_max (" + std::to_string(dmax) + ") exceeds the document count (" +
                          std::to_string(doc_count) + ")");
  }
  lof.validate();
}

std::vector<double> centroid(const Matrix<double>& vectors) {
  if (vectors.rows() == 0) throw ValidationError("centroid of an empty set");
  std::vector<double> mean(vectors.cols(), 0.0);
  for (std::size_t r = 0; r < vectors.rows(); ++r) {
    const auto row = vectors.row(r);
    for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += row[j];
  }
  const double n = static_cast<double>(vectors.rows());
  for (auto& v : mean) v /= n;
  return mean;
}

KeywordCentroid keyword_centroid(const EmbeddingModel& model, const TopicSpec& topic) {
  KeywordCentroid out;
  Matrix<double> found;
  std::vector<double> buf(model.dim());
  for (const auto& kw : topic.keywords) {
    const auto idx = model.vocabulary.index_of(kw);
    if (!idx) {
      out.oov_keywords.push_back(kw);
      continue;
    }
    const auto v = model.word_vectors.row(*idx);
    std::copy(v.begin(), v.end(), buf.begin());
    found.append_row(buf);
  }
  if (found.rows() == 0) {
    std::string list;
    for (const auto& kw : out.oov_keywords) list += (list.empty() ? "" : ", ") + kw;
    throw DataError("all keywords of topic '" + topic.name + "' are out of vocabulary: " + list);
  }
  out.vector = centroid(found);
  return out;
}

CandidateSet select_candidates(const Matrix<float>& doc_vectors, std::span<const double> query,
                               const LabelParams& params) {
  const std::size_t n = doc_vectors.rows();
  params.validate(n);
  const std::size_t d_max = params.resolved_d_max(n);

  const std::vector<double> sims = cosine_to_rows(doc_vectors, query);
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return sims[a] > sims[b]; });

  CandidateSet out;
  for (std::size_t i = 0; i < d_max; ++i) {
    const double sim = sims[order[i]];
    if (i >= params.d_min && !(sim > params.s)) break;
    out.ranked_candidate_ids.push_back(order[i]);
    out.similarities.push_back(sim);
  }
  return out;
}

CandidateSet select_candidates(const EmbeddingModel& model, std::span<const double> query,
                               const LabelParams& params) {
  return select_candidates(model.doc_vectors, query, params);
}

LabelResult compute_label_embedding(const EmbeddingModel& model, const TopicSpec& topic,
                                    const LabelParams& params) {
  LabelResult result;
  auto keywords = keyword_centroid(model, topic);
  result.candidates = select_candidates(model, keywords.vector, params);
  result.candidates.topic = topic.name;

  const auto& ids = result.candidates.ranked_candidate_ids;
  Matrix<double> candidates(ids.size(), model.dim());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const auto v = model.doc_vectors.row(ids[i]);
    std::copy(v.begin(), v.end(), candidates.row(i).begin());
  }

  Matrix<double> kept;
  if (ids.size() >= 2) {
    const auto filter = filter_outliers(candidates, params.lof);
    result.lof_fallback = filter.fallback;
    for (const auto i : filter.kept) {
      result.candidates.kept_ids.push_back(ids[i]);
      kept.append_row(candidates.row(i));
    }
  } else {
    // A single candidate has no neighbors to compare against.
    result.candidates.kept_ids = ids;
    kept = candidates;
  }

  result.label.topic = topic.name;
  result.label.vector = centroid(kept);
  result.label.candidate_count = ids.size();
  result.label.kept_count = result.candidates.kept_ids.size();
  result.label.oov_keywords = std::move(keywords.oov_keywords);
  return result;
}

std::vector<LabelResult> compute_label_embeddings(const EmbeddingModel& model,
                                                  std::span<const TopicSpec> topics,
                                                  const LabelParams& params) {
  validate_topics(topics);
  params.validate(model.doc_count());
  std::vector<LabelResult> out;
  out.reserve(topics.size());
  for (const auto& t : topics) out.push_back(compute_label_embedding(model, t, params));
  return out;
}

}  // namespace lbl2vec
