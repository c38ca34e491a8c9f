#include <fstream>
#include <istream>
#include <string>

#include <json.hpp>

#include "lbl2vec/corpus.hpp"
#include "lbl2vec/error.hpp"

namespace lbl2vec {

std::size_t Corpus::token_count() const noexcept {
  std::size_t n = 0;
  for (const auto& d : documents) n += d.tokens.size();
  return n;
}

std::vector<std::optional<std::string>> Corpus::gold_labels() const {
  std::vector<std::optional<std::string>> out;
  out.reserve(documents.size());
  for (const auto& d : documents) out.push_back(d.gold_label);
  return out;
}

Corpus ingest_jsonl(std::istream& in, std::string source_name) {
  Corpus corpus;
  corpus.source_path = std::move(source_name);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error&) {
      throw DataError("malformed JSON at line " + std::to_string(line_no));
    }
    if (!obj.is_object()) {
      throw DataError("expected a JSON object at line " + std::to_string(line_no));
    }
    const auto text = obj.find("text");
    if (text == obj.end()) {
      throw DataError("missing field text at line " + std::to_string(line_no));
    }
    if (!text->is_string()) {
      throw DataError("field text is not a string at line " + std::to_string(line_no));
    }
    Document doc;
    doc.doc_id = static_cast<std::uint32_t>(corpus.documents.size());
    doc.raw_text = text->get<std::string>();
    doc.tokens = tokenize(doc.raw_text);
    if (const auto label = obj.find("label"); label != obj.end() && !label->is_null()) {
      if (!label->is_string()) {
        throw DataError("field label is not a string at line " + std::to_string(line_no));
      }
      doc.gold_label = label->get<std::string>();
    }
    corpus.documents.push_back(std::move(doc));
  }
  if (corpus.documents.empty()) throw DataError("empty corpus: " + corpus.source_path);
  return corpus;
}

Corpus ingest_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file: " + path.string());
  return ingest_jsonl(in, path.string());
}

Corpus make_corpus(std::span<const std::string> texts,
                   std::span<const std::optional<std::string>> labels) {
  if (!labels.empty() && labels.size() != texts.size()) {
    throw ValidationError("labels must be empty or match the number of texts");
  }
  Corpus corpus;
  corpus.source_path = "<memory>";
  corpus.documents.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    Document doc;
    doc.doc_id = static_cast<std::uint32_t>(i);
    doc.raw_text = texts[i];
    doc.tokens = tokenize(texts[i]);
    if (!labels.empty()) doc.gold_label = labels[i];
    corpus.documents.push_back(std::move(doc));
  }
  return corpus;
}

}  // namespace lbl2vec
