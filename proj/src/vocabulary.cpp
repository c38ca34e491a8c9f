#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "lbl2vec/corpus.hpp"
#include "lbl2vec/error.hpp"

namespace lbl2vec {

Vocabulary::Vocabulary(std::vector<Entry> entries, int min_count, double subsample_threshold)
    : entries_(std::move(entries)),
      min_count_(min_count),
      subsample_threshold_(subsample_threshold) {
  if (min_count < 1) throw ValidationError("min_count must be >= 1");
  if (subsample_threshold < 0.0) throw ValidationError("subsample threshold must be >= 0");
  if (entries_.empty()) throw DataError("empty vocabulary");

  index_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].count == 0) throw DataError("zero count for word: " + entries_[i].word);
    if (!index_.emplace(entries_[i].word, static_cast<std::uint32_t>(i)).second) {
      throw DataError("duplicate vocabulary word: " + entries_[i].word);
    }
    total_tokens_ += entries_[i].count;
  }

  noise_.resize(entries_.size());
  double z = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    noise_[i] = std::pow(static_cast<double>(entries_[i].count), kNoisePower);
    z += noise_[i];
  }
  noise_cdf_.resize(entries_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    noise_[i] /= z;
    acc += noise_[i];
    noise_cdf_[i] = acc;
  }
  noise_cdf_.back() = 1.0;

  // Keep probability follows the word2vec rule (sqrt(f/t) + 1) * t/f with
  // f the relative frequency and t the threshold.
  keep_.assign(entries_.size(), 1.0);
  if (subsample_threshold_ > 0.0) {
    const double t = subsample_threshold_ * static_cast<double>(total_tokens_);
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      const double c = static_cast<double>(entries_[i].count);
      keep_[i] = std::min(1.0, (std::sqrt(c / t) + 1.0) * t / c);
    }
  }
}

std::optional<std::uint32_t> Vocabulary::index_of(const std::string& word) const {
  const auto it = index_.find(word);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t Vocabulary::sample_noise(double uniform) const noexcept {
  const auto it = std::upper_bound(noise_cdf_.begin(), noise_cdf_.end(), uniform);
  const auto idx = static_cast<std::size_t>(it - noise_cdf_.begin());
  return static_cast<std::uint32_t>(std::min(idx, noise_cdf_.size() - 1));
}

std::vector<std::uint32_t> Vocabulary::encode(std::span<const std::string> tokens) const {
  std::vector<std::uint32_t> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (const auto idx = index_of(t)) ids.push_back(*idx);
  }
  return ids;
}

Vocabulary build_vocabulary(const Corpus& corpus, int min_count, double subsample_threshold) {
  if (min_count < 1) throw ValidationError("min_count must be >= 1");
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const auto& doc : corpus.documents) {
    for (const auto& t : doc.tokens) ++counts[t];
  }
  std::vector<Vocabulary::Entry> entries;
  for (auto& [word, count] : counts) {
    if (count >= static_cast<std::uint64_t>(min_count)) entries.push_back({word, count});
  }
  if (entries.empty()) throw DataError("empty vocabulary");
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    return a.count != b.count ? a.count > b.count : a.word < b.word;
  });
  return Vocabulary(std::move(entries), min_count, subsample_threshold);
}

}  // namespace lbl2vec
