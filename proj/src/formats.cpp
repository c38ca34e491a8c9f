#include "lbl2vec/formats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "lbl2vec/error.hpp"

namespace lbl2vec {
namespace {

using json = nlohmann::ordered_json;

json parse_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path.string());
  try {
    return json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

std::string lowercase(const std::string& s) {
  // Keywords follow the corpus tokenizer, so "Space," and "space" agree.
  const auto tokens = tokenize(s);
  std::string out;
  for (const auto& t : tokens) out += (out.empty() ? "" : " ") + t;
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (const char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot open for writing: " + path.string());
  return out;
}

}  // namespace

std::vector<TopicSpec> parse_topics(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("malformed keywords JSON: ") + e.what());
  }
  if (!doc.is_array()) throw DataError("keywords file must hold a JSON array");
  std::vector<TopicSpec> topics;
  for (const auto& item : doc) {
    if (!item.is_object() || !item.contains("topic") || !item["topic"].is_string() ||
        !item.contains("keywords") || !item["keywords"].is_array()) {
      throw DataError("each keywords entry needs a string 'topic' and an array 'keywords'");
    }
    TopicSpec t;
    t.name = item["topic"].get<std::string>();
    std::set<std::string> seen;
    for (const auto& kw : item["keywords"]) {
      if (!kw.is_string()) throw DataError("non-string keyword in topic '" + t.name + "'");
      auto word = lowercase(kw.get<std::string>());
      if (word.empty() || !seen.insert(word).second) continue;
      t.keywords.push_back(std::move(word));
    }
    topics.push_back(std::move(t));
  }
  validate_topics(topics);
  return topics;
}

std::vector<TopicSpec> read_topics(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open keywords file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_topics(buf.str());
}

void write_labels(const std::filesystem::path& path, const std::vector<LabelResult>& results) {
  json doc = json::array();
  for (const auto& r : results) {
    doc.push_back({{"topic", r.label.topic},
                   {"vector", r.label.vector},
                   {"candidate_count", r.label.candidate_count},
                   {"kept_count", r.label.kept_count},
                   {"oov_keywords", r.label.oov_keywords},
                   {"candidate_ids", r.candidates.ranked_candidate_ids},
                   {"kept_ids", r.candidates.kept_ids}});
  }
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
}

std::vector<LabelEmbedding> read_labels(const std::filesystem::path& path) {
  const json doc = parse_file(path);
  if (!doc.is_array() || doc.empty()) throw DataError("labels file must hold a non-empty JSON array");
  std::vector<LabelEmbedding> labels;
  try {
    for (const auto& item : doc) {
      LabelEmbedding l;
      l.topic = item.at("topic").get<std::string>();
      l.vector = item.at("vector").get<std::vector<double>>();
      l.candidate_count = item.value("candidate_count", std::size_t{0});
      l.kept_count = item.value("kept_count", std::size_t{0});
      l.oov_keywords = item.value("oov_keywords", std::vector<std::string>{});
      labels.push_back(std::move(l));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError("malformed labels file " + path.string() + ": " + e.what());
  }
  return labels;
}

std::map<std::string, double> read_alpha_overrides(const std::filesystem::path& path) {
  const json doc = parse_file(path);
  if (!doc.is_object()) throw DataError("alpha file must hold a JSON object of topic -> alpha");
  std::map<std::string, double> out;
  for (const auto& [topic, value] : doc.items()) {
    if (!value.is_number()) throw DataError("alpha for topic '" + topic + "' is not a number");
    out[topic] = value.get<double>();
  }
  return out;
}

void write_predictions(std::ostream& out, const std::vector<Prediction>& predictions) {
  for (const auto& p : predictions) {
    json scores = json::object();
    for (const auto& s : p.scores) scores[s.topic] = s.similarity;
    json line = {{"doc_id", p.doc_id},
                 {"topic", p.assigned_topic ? json(*p.assigned_topic) : json(nullptr)},
                 {"similarity", p.similarity},
                 {"accepted", p.accepted},
                 {"scores", std::move(scores)}};
    out << line.dump() << '\n';
  }
}

std::vector<Prediction> read_predictions(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open predictions file: " + path.string());
  std::vector<Prediction> out;
  std::vector<std::string> topic_order;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const json obj = json::parse(line);
      Prediction p;
      p.doc_id = obj.at("doc_id").get<std::uint32_t>();
      if (!obj.at("topic").is_null()) p.assigned_topic = obj["topic"].get<std::string>();
      p.similarity = obj.at("similarity").get<double>();
      p.accepted = obj.at("accepted").get<bool>();
      // JSON objects are unordered; restore the label order from the first
      // line that has it, which is the order the file was written in.
      const auto& scores = obj.at("scores");
      if (topic_order.empty()) {
        for (const auto& [topic, _] : scores.items()) topic_order.push_back(topic);
      }
      for (const auto& topic : topic_order) p.scores.push_back({topic, scores.at(topic).get<double>()});
      out.push_back(std::move(p));
    } catch (const nlohmann::json::exception& e) {
      throw DataError("malformed prediction at line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void write_hits(std::ostream& out, const std::string& topic, const std::vector<Hit>& hits) {
  for (const auto& h : hits) {
    out << json{{"topic", topic}, {"doc_id", h.doc_id}, {"similarity", h.similarity}}.dump() << '\n';
  }
}

void write_roc_csv(std::ostream& out, const std::vector<std::pair<std::string, RocCurve>>& curves) {
  out << "topic,threshold,fpr,tpr\n";
  char buf[128];
  for (const auto& [topic, curve] : curves) {
    for (const auto& p : curve.points) {
      if (std::isinf(p.threshold)) {
        std::snprintf(buf, sizeof(buf), "inf,%.17g,%.17g", p.fpr, p.tpr);
      } else {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g", p.threshold, p.fpr, p.tpr);
      }
      out << csv_field(topic) << ',' << buf << '\n';
    }
  }
}

}  // namespace lbl2vec
