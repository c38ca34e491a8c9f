#include "lbl2vec/embedding.hpp"

#include <cstdint>
#include <random>

#include "lbl2vec/error.hpp"
#include "lbl2vec/sgns.hpp"

namespace lbl2vec {
namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Every (epoch, document) pair draws from its own stream, so the random
// choices do not depend on how documents are split across workers.
std::mt19937_64 document_rng(std::uint64_t seed, int epoch, std::size_t doc) {
  return std::mt19937_64(mix(mix(seed) ^ mix((static_cast<std::uint64_t>(epoch) << 40) ^ doc)));
}

struct Workspace {
  std::vector<float> scratch;
  std::vector<SampleTarget> targets;
  std::vector<std::uint32_t> kept;
};

void fill_targets(const Vocabulary& vocab, std::uint32_t target, int negatives,
                  std::mt19937_64& rng, std::vector<SampleTarget>& out) {
  out.clear();
  out.push_back({target, true});
  for (int n = 0; n < negatives; ++n) {
    const std::uint32_t w = vocab.sample_noise(uniform01(rng));
    if (w == target) continue;
    out.push_back({w, false});
  }
}

}  // namespace

void TrainConfig::validate() const {
  if (dim < 1) throw ValidationError("dim must be >= 1");
  if (epochs < 1) throw ValidationError("epochs must be >= 1");
  if (window < 1) throw ValidationError("window must be >= 1");
  if (negatives < 1) throw ValidationError("negatives must be >= 1");
  if (!(min_lr > 0.0) || !(min_lr <= initial_lr)) {
    throw ValidationError("learning rates must satisfy 0 < min_lr <= initial_lr");
  }
  if (workers < 1) throw ValidationError("workers must be >= 1");
}

std::span<const float> EmbeddingModel::word_vector(const std::string& word) const {
  const auto idx = vocabulary.index_of(word);
  if (!idx) throw OovError(word);
  return word_vectors.row(*idx);
}

std::span<const float> EmbeddingModel::doc_vector(std::size_t doc_id) const {
  if (doc_id >= doc_vectors.rows()) {
    throw ValidationError("doc_id " + std::to_string(doc_id) + " out of range [0, " +
                          std::to_string(doc_vectors.rows()) + ")");
  }
  return doc_vectors.row(doc_id);
}

bool bitwise_equal(const EmbeddingModel& a, const EmbeddingModel& b) noexcept {
  const auto ea = a.vocabulary.entries();
  const auto eb = b.vocabulary.entries();
  if (ea.size() != eb.size()) return false;
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (ea[i].word != eb[i].word || ea[i].count != eb[i].count) return false;
  }
  return bitwise_equal(a.word_vectors, b.word_vectors) &&
         bitwise_equal(a.doc_vectors, b.doc_vectors) &&
         bitwise_equal(a.output_vectors, b.output_vectors);
}

EmbeddingModel train(const Corpus& corpus, const Vocabulary& vocabulary,
                     const TrainConfig& config, TrainStats* stats) {
  config.validate();
  if (corpus.documents.empty()) throw DataError("empty corpus");
  if (vocabulary.empty()) throw DataError("empty vocabulary");

  const std::size_t dim = static_cast<std::size_t>(config.dim);
  const std::size_t n_docs = corpus.documents.size();

  std::vector<std::vector<std::uint32_t>> encoded(n_docs);
  std::vector<std::uint64_t> prefix(n_docs);
  std::uint64_t total = 0;
  for (std::size_t d = 0; d < n_docs; ++d) {
    encoded[d] = vocabulary.encode(corpus.documents[d].tokens);
    prefix[d] = total;
    total += encoded[d].size();
  }
  if (total == 0) throw DataError("corpus has no in-vocabulary tokens");

  EmbeddingModel model;
  model.vocabulary = vocabulary;
  model.word_vectors = Matrix<float>(vocabulary.size(), dim);
  model.doc_vectors = Matrix<float>(n_docs, dim);
  model.output_vectors = Matrix<float>(vocabulary.size(), dim, 0.0f);
  {
    std::mt19937_64 rng(mix(config.seed));
    const double half = 0.5 / static_cast<double>(dim);
    for (auto& v : model.word_vectors.values()) v = static_cast<float>((uniform01(rng) * 2.0 - 1.0) * half);
    for (auto& v : model.doc_vectors.values()) v = static_cast<float>((uniform01(rng) * 2.0 - 1.0) * half);
  }

  const double total_work = static_cast<double>(total) * config.epochs;
  const double lr_span = config.initial_lr - config.min_lr;
  const auto docs = static_cast<std::int64_t>(n_docs);
  const int window = config.window;

  if (stats) *stats = TrainStats{};
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    double epoch_loss = 0.0;
    std::uint64_t epoch_updates = 0;

#pragma omp parallel num_threads(config.workers) reduction(+ : epoch_loss, epoch_updates)
    {
      Workspace ws;
      ws.scratch.resize(dim);

#pragma omp for schedule(dynamic, 16)
      for (std::int64_t d = 0; d < docs; ++d) {
        const auto& ids = encoded[d];
        if (ids.empty()) continue;
        auto rng = document_rng(config.seed, epoch, static_cast<std::size_t>(d));

        const double progress =
            (static_cast<double>(epoch) * static_cast<double>(total) + static_cast<double>(prefix[d])) /
            total_work;
        const auto lr = static_cast<float>(std::max(config.min_lr, config.initial_lr - lr_span * progress));

        ws.kept.clear();
        for (const auto id : ids) {
          if (vocabulary.keep_probability(id) >= 1.0 ||
              vocabulary.keep_probability(id) > uniform01(rng)) {
            ws.kept.push_back(id);
          }
        }

        auto doc_vec = model.doc_vectors.row(static_cast<std::size_t>(d));
        const auto len = static_cast<std::int64_t>(ws.kept.size());
        for (std::int64_t pos = 0; pos < len; ++pos) {
          const std::uint32_t center = ws.kept[pos];

          // PV-DBOW: the document vector predicts the token.
          fill_targets(vocabulary, center, config.negatives, rng, ws.targets);
          epoch_loss += negative_sampling_update<float>(doc_vec, model.output_vectors, ws.targets,
                                                        lr, ws.scratch);
          ++epoch_updates;

          // Skip-gram: the token predicts each neighbor in its window.
          auto word_vec = model.word_vectors.row(center);
          const std::int64_t lo = std::max<std::int64_t>(0, pos - window);
          const std::int64_t hi = std::min<std::int64_t>(len - 1, pos + window);
          for (std::int64_t c = lo; c <= hi; ++c) {
            if (c == pos) continue;
            fill_targets(vocabulary, ws.kept[c], config.negatives, rng, ws.targets);
            epoch_loss += negative_sampling_update<float>(word_vec, model.output_vectors,
                                                          ws.targets, lr, ws.scratch);
            ++epoch_updates;
          }
        }
      }
    }

    if (stats) {
      stats->processed_tokens += total;
      stats->updates += epoch_updates;
      stats->epoch_loss.push_back(epoch_updates ? epoch_loss / static_cast<double>(epoch_updates) : 0.0);
    }
  }
  return model;
}

}  // namespace lbl2vec
