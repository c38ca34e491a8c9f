#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lbl2vec/evaluation.hpp"
#include "lbl2vec/labeling.hpp"
#include "lbl2vec/retrieval.hpp"

namespace lbl2vec {

// Keywords file: [{"topic": "...", "keywords": ["...", ...]}, ...].
// Keywords are lowercased on load.
std::vector<TopicSpec> read_topics(const std::filesystem::path& path);
std::vector<TopicSpec> parse_topics(const std::string& json_text);

// Label file: JSON array of {topic, vector, candidate_count, kept_count,
// oov_keywords, candidate_ids, kept_ids}.
void write_labels(const std::filesystem::path& path, const std::vector<LabelResult>& results);
std::vector<LabelEmbedding> read_labels(const std::filesystem::path& path);

// Per-topic alpha overrides: {"topic": alpha, ...}.
std::map<std::string, double> read_alpha_overrides(const std::filesystem::path& path);

// Predictions JSONL: {"doc_id", "topic", "similarity", "accepted", "scores": {topic: sim}}.
// "topic" is null for documents without an assignment.
void write_predictions(std::ostream& out, const std::vector<Prediction>& predictions);
std::vector<Prediction> read_predictions(const std::filesystem::path& path);

// Retrieval JSONL: {"topic", "doc_id", "similarity"} per hit.
void write_hits(std::ostream& out, const std::string& topic, const std::vector<Hit>& hits);

// ROC CSV with header "topic,threshold,fpr,tpr". The micro-average curve is
// written under the topic name "micro".
void write_roc_csv(std::ostream& out, const std::vector<std::pair<std::string, RocCurve>>& curves);

}  // namespace lbl2vec
