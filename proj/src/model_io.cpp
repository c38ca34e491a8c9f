#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include "lbl2vec/embedding.hpp"
#include "lbl2vec/error.hpp"

namespace lbl2vec {
namespace {

template <typename U>
void put_le(std::ostream& out, U value) {
  std::array<char, sizeof(U)> bytes;
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  }
  out.write(bytes.data(), bytes.size());
}

void read_exact(std::istream& in, char* dst, std::size_t n) {
  in.read(dst, static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) throw DataError("unexpected end of file");
}

template <typename U>
U get_le(std::istream& in) {
  std::array<unsigned char, sizeof(U)> bytes;
  read_exact(in, reinterpret_cast<char*>(bytes.data()), bytes.size());
  U value = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) value |= static_cast<U>(bytes[i]) << (8 * i);
  return value;
}

void put_matrix(std::ostream& out, const Matrix<float>& m) {
  for (const float v : m.values()) put_le(out, std::bit_cast<std::uint32_t>(v));
}

void get_matrix(std::istream& in, Matrix<float>& m) {
  std::vector<unsigned char> buf(m.cols() * sizeof(float));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    read_exact(in, reinterpret_cast<char*>(buf.data()), buf.size());
    auto row = m.row(r);
    for (std::size_t c = 0; c < m.cols(); ++c) {
      std::uint32_t bits = 0;
      for (std::size_t b = 0; b < 4; ++b) bits |= static_cast<std::uint32_t>(buf[4 * c + b]) << (8 * b);
      row[c] = std::bit_cast<float>(bits);
    }
  }
}

// Bytes left in a seekable stream, or max() when the stream cannot seek.
std::uint64_t remaining_bytes(std::istream& in) {
  const auto here = in.tellg();
  if (here < 0) return std::numeric_limits<std::uint64_t>::max();
  in.seekg(0, std::ios::end);
  const auto end = in.tellg();
  in.seekg(here);
  if (end < 0) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(end - here);
}

}  // namespace

void save_model(const EmbeddingModel& model, std::ostream& out) {
  out.write(kModelMagic, sizeof(kModelMagic));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(model.dim()));
  put_le<std::uint64_t>(out, model.vocabulary.size());
  put_le<std::uint64_t>(out, model.doc_count());
  for (const auto& e : model.vocabulary.entries()) {
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(e.word.size()));
    out.write(e.word.data(), static_cast<std::streamsize>(e.word.size()));
    put_le<std::uint64_t>(out, e.count);
  }
  put_matrix(out, model.word_vectors);
  put_matrix(out, model.doc_vectors);
  put_matrix(out, model.output_vectors);
  if (!out) throw DataError("failed to write model");
}

void save_model(const EmbeddingModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open for writing: " + path.string());
  save_model(model, out);
}

EmbeddingModel load_model(std::istream& in) {
  char magic[sizeof(kModelMagic)];
  in.read(magic, sizeof(magic));
  if (static_cast<std::size_t>(in.gcount()) != sizeof(magic) ||
      std::memcmp(magic, kModelMagic, sizeof(magic)) != 0) {
    throw DataError("unrecognized model file");
  }
  const auto dim = get_le<std::uint32_t>(in);
  const auto vocab_size = get_le<std::uint64_t>(in);
  const auto doc_count = get_le<std::uint64_t>(in);
  if (dim == 0) throw DataError("model dimension is zero");
  if (vocab_size == 0) throw DataError("empty vocabulary");

  std::vector<Vocabulary::Entry> entries;
  std::uint64_t min_count = std::numeric_limits<std::uint64_t>::max();
  for (std::uint64_t i = 0; i < vocab_size; ++i) {
    const auto len = get_le<std::uint32_t>(in);
    if (len > remaining_bytes(in)) throw DataError("unexpected end of file");
    std::string word(len, '\0');
    read_exact(in, word.data(), len);
    const auto count = get_le<std::uint64_t>(in);
    min_count = std::min(min_count, count);
    entries.push_back({std::move(word), count});
  }

  const std::uint64_t floats = (2 * vocab_size + doc_count) * dim;
  if (floats > remaining_bytes(in) / sizeof(float)) throw DataError("unexpected end of file");

  EmbeddingModel model;
  // Threshold and min_count are not stored; the smallest retained count is a
  // valid min_count for the stored entries.
  model.vocabulary = Vocabulary(std::move(entries),
                                static_cast<int>(std::min<std::uint64_t>(
                                    std::max<std::uint64_t>(min_count, 1),
                                    std::numeric_limits<int>::max())),
                                kDefaultSubsampleThreshold);
  model.word_vectors = Matrix<float>(vocab_size, dim);
  model.doc_vectors = Matrix<float>(doc_count, dim);
  model.output_vectors = Matrix<float>(vocab_size, dim);
  get_matrix(in, model.word_vectors);
  get_matrix(in, model.doc_vectors);
  get_matrix(in, model.output_vectors);
  return model;
}

EmbeddingModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file: " + path.string());
  return load_model(in);
}

}  // namespace lbl2vec
