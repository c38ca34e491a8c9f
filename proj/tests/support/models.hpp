#pragma once

#include <random>
#include <string>
#include <vector>

#include "lbl2vec/embedding.hpp"

namespace lbl2vec::test_support {

/// Builds a model from explicit vectors; output vectors are zero.
inline EmbeddingModel make_model(const std::vector<std::string>& words,
                                 const std::vector<std::vector<float>>& word_vecs,
                                 const std::vector<std::vector<float>>& doc_vecs) {
  EmbeddingModel m;
  std::vector<Vocabulary::Entry> entries;
  for (const auto& w : words) entries.push_back({w, 1});
  m.vocabulary = Vocabulary(std::move(entries), 1, 0.0);
  const std::size_t dim = !word_vecs.empty() ? word_vecs.front().size() : doc_vecs.front().size();
  m.word_vectors = Matrix<float>(words.size(), dim);
  for (std::size_t i = 0; i < word_vecs.size(); ++i) {
    std::copy(word_vecs[i].begin(), word_vecs[i].end(), m.word_vectors.row(i).begin());
  }
  m.doc_vectors = Matrix<float>(doc_vecs.size(), dim);
  for (std::size_t i = 0; i < doc_vecs.size(); ++i) {
    std::copy(doc_vecs[i].begin(), doc_vecs[i].end(), m.doc_vectors.row(i).begin());
  }
  m.output_vectors = Matrix<float>(words.size(), dim);
  return m;
}

/// Model with Gaussian word and document vectors.
inline EmbeddingModel random_model(std::size_t words, std::size_t docs, std::size_t dim,
                                   std::mt19937_64& rng) {
  std::normal_distribution<float> g(0.0f, 1.0f);
  std::vector<std::string> names;
  std::vector<std::vector<float>> wv(words, std::vector<float>(dim));
  std::vector<std::vector<float>> dv(docs, std::vector<float>(dim));
  for (std::size_t i = 0; i < words; ++i) {
    names.push_back("w" + std::to_string(i));
    for (auto& x : wv[i]) x = g(rng);
  }
  for (auto& row : dv) {
    for (auto& x : row) x = g(rng);
  }
  return make_model(names, wv, dv);
}

}  // namespace lbl2vec::test_support
