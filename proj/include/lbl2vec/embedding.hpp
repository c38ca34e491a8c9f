#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "lbl2vec/corpus.hpp"
#include "lbl2vec/matrix.hpp"

namespace lbl2vec {

struct TrainConfig {
  int dim = 300;
  int epochs = 10;
  int window = 5;
  int negatives = 5;
  double initial_lr = 0.025;
  double min_lr = 0.0001;
  std::uint64_t seed = 1;
  int workers = 1;

  /// Throws ValidationError when a field is out of range.
  void validate() const;
};

struct TrainStats {
  std::uint64_t processed_tokens = 0;   // retained tokens seen, summed over epochs
  std::uint64_t updates = 0;            // negative-sampling steps taken
  std::vector<double> epoch_loss;       // mean loss per step, one entry per epoch

  double final_loss() const noexcept { return epoch_loss.empty() ? 0.0 : epoch_loss.back(); }
};

/// Word, document, and output vectors trained against a shared output layer,
/// so words and documents live in one feature space.
struct EmbeddingModel {
  Vocabulary vocabulary;
  Matrix<float> word_vectors;    // |V| x dim
  Matrix<float> doc_vectors;     // |D| x dim
  Matrix<float> output_vectors;  // |V| x dim

  std::size_t dim() const noexcept { return word_vectors.cols(); }
  std::size_t doc_count() const noexcept { return doc_vectors.rows(); }

  /// Throws OovError for words outside the vocabulary.
  std::span<const float> word_vector(const std::string& word) const;
  /// Throws ValidationError when doc_id >= doc_count().
  std::span<const float> doc_vector(std::size_t doc_id) const;
};

/// Trains document vectors with PV-DBOW interleaved with Skip-gram word
/// training over the same token sequence. With workers == 1 the result is a
/// pure function of (corpus, vocabulary, config).
EmbeddingModel train(const Corpus& corpus, const Vocabulary& vocabulary,
                     const TrainConfig& config, TrainStats* stats = nullptr);

/// True when vocabularies and all three matrices match bit for bit.
bool bitwise_equal(const EmbeddingModel& a, const EmbeddingModel& b) noexcept;

// Binary model format: magic "LBL2VEC\x01", little-endian u32 dim, u64 vocab
// size, u64 doc count, vocab entries (u32 length, UTF-8 bytes, u64 count),
// then word, doc, and output matrices row-major as f32.
inline constexpr char kModelMagic[8] = {'L', 'B', 'L', '2', 'V', 'E', 'C', '\x01'};

void save_model(const EmbeddingModel& model, std::ostream& out);
void save_model(const EmbeddingModel& model, const std::filesystem::path& path);
EmbeddingModel load_model(std::istream& in);
EmbeddingModel load_model(const std::filesystem::path& path);

}  // namespace lbl2vec
