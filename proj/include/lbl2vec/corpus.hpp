#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lbl2vec {

struct Document {
  std::uint32_t doc_id = 0;
  std::string raw_text;
  std::vector<std::string> tokens;
  std::optional<std::string> gold_label;  // evaluation only
};

struct Corpus {
  std::vector<Document> documents;
  std::string source_path;

  std::size_t size() const noexcept { return documents.size(); }
  std::size_t token_count() const noexcept;
  std::vector<std::optional<std::string>> gold_labels() const;
};

/// Lowercases, splits on Unicode whitespace, and strips leading/trailing
/// non-alphanumeric characters from every token. Tokens left empty are dropped.
std::vector<std::string> tokenize(std::string_view raw_text);

/// Reads a JSONL corpus: one object per line with a required "text" string
/// and an optional "label" string. doc_id is the zero-based line index.
Corpus ingest_jsonl(const std::filesystem::path& path);
Corpus ingest_jsonl(std::istream& in, std::string source_name);

/// Builds an in-memory corpus; used by tests and synthetic generators.
Corpus make_corpus(std::span<const std::string> texts,
                   std::span<const std::optional<std::string>> labels = {});

inline constexpr int kDefaultMinCount = 5;
inline constexpr double kDefaultSubsampleThreshold = 1e-3;
inline constexpr double kNoisePower = 0.75;

/// Retained words with their counts, plus the negative-sampling noise
/// distribution (unigram^0.75) and subsampling keep probabilities.
class Vocabulary {
 public:
  struct Entry {
    std::string word;
    std::uint64_t count = 0;
  };

  Vocabulary() = default;

  /// Entries are kept in the given order; their index is their position.
  Vocabulary(std::vector<Entry> entries, int min_count, double subsample_threshold);

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  std::optional<std::uint32_t> index_of(const std::string& word) const;
  const std::string& word(std::uint32_t index) const { return entries_.at(index).word; }
  std::uint64_t count(std::uint32_t index) const { return entries_.at(index).count; }
  std::span<const Entry> entries() const noexcept { return entries_; }

  /// Sum of the counts of retained words.
  std::uint64_t total_tokens() const noexcept { return total_tokens_; }
  int min_count() const noexcept { return min_count_; }
  double subsample_threshold() const noexcept { return subsample_threshold_; }

  /// Noise probability per word index; sums to 1.
  std::span<const double> noise_distribution() const noexcept { return noise_; }

  /// Maps a uniform draw in [0, 1) to a word index under the noise distribution.
  std::uint32_t sample_noise(double uniform) const noexcept;

  /// Probability that an occurrence of the word survives subsampling.
  double keep_probability(std::uint32_t index) const noexcept { return keep_[index]; }

  /// Maps tokens to indices, dropping words that are not retained.
  std::vector<std::uint32_t> encode(std::span<const std::string> tokens) const;

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::uint32_t> index_;
  std::uint64_t total_tokens_ = 0;
  int min_count_ = 1;
  double subsample_threshold_ = 0.0;
  std::vector<double> noise_;
  std::vector<double> noise_cdf_;
  std::vector<double> keep_;
};

/// Counts corpus tokens and retains words with count >= min_count, ordered by
/// descending count then ascending word. Throws DataError("empty vocabulary")
/// when nothing survives the filter.
Vocabulary build_vocabulary(const Corpus& corpus, int min_count = kDefaultMinCount,
                            double subsample_threshold = kDefaultSubsampleThreshold);

}  // namespace lbl2vec
