#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lbl2vec/corpus.hpp"
#include "lbl2vec/embedding.hpp"
#include "lbl2vec/error.hpp"
#include "lbl2vec/evaluation.hpp"
#include "lbl2vec/formats.hpp"
#include "lbl2vec/labeling.hpp"
#include "lbl2vec/retrieval.hpp"

namespace lbl2vec::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr double kSignificanceLevel = 0.05;

const CLI::Validator kInputFile(
    [](std::string& path) {
      return std::filesystem::is_regular_file(path) ? std::string() : "file not found: " + path;
    },
    "FILE");

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("cannot open for writing: " + path);
  return out;
}

struct TrainArgs {
  std::string corpus, out;
  int min_count = kDefaultMinCount;
  double sample = kDefaultSubsampleThreshold;
  TrainConfig config;
};

struct LabelArgs {
  std::string model, keywords, out;
  LabelParams params;
};

struct ScoreArgs {
  std::string model, labels, out, alpha_file, topic;
  double alpha = -1.0;
};

struct EvaluateArgs {
  std::string corpus, predictions, roc_out, summary_out;
};

struct AnalyzeArgs {
  std::string model, keywords, auc, out;
};

AlphaConfig make_alphas(const ScoreArgs& a) {
  AlphaConfig alphas;
  alphas.default_alpha = a.alpha;
  if (!a.alpha_file.empty()) alphas.per_topic = read_alpha_overrides(a.alpha_file);
  alphas.validate();
  return alphas;
}

int cmd_train(const TrainArgs& a, std::ostream& out) {
  a.config.validate();
  const Corpus corpus = ingest_jsonl(a.corpus);
  const Vocabulary vocab = build_vocabulary(corpus, a.min_count, a.sample);
  TrainStats stats;
  const EmbeddingModel model = train(corpus, vocab, a.config, &stats);
  save_model(model, std::filesystem::path(a.out));
  out << "documents: " << corpus.size() << '\n'
      << "tokens: " << corpus.token_count() << '\n'
      << "retained tokens: " << vocab.total_tokens() << '\n'
      << "vocabulary: " << vocab.size() << '\n'
      << "final loss: " << stats.final_loss() << '\n';
  return kExitOk;
}

int cmd_labels(const LabelArgs& a, std::ostream& out) {
  const auto topics = read_topics(a.keywords);
  const EmbeddingModel model = load_model(std::filesystem::path(a.model));
  a.params.validate(model.doc_count());
  const auto results = compute_label_embeddings(model, topics, a.params);
  write_labels(a.out, results);
  for (const auto& r : results) {
    out << r.label.topic << ": candidates " << r.label.candidate_count << ", kept "
        << r.label.kept_count;
    if (r.lof_fallback) out << " (all candidates scored as outliers; kept the lowest)";
    if (!r.label.oov_keywords.empty()) {
      out << ", oov:";
      for (const auto& w : r.label.oov_keywords) out << ' ' << w;
    }
    out << '\n';
  }
  return kExitOk;
}

int cmd_retrieve(const ScoreArgs& a, std::ostream& out) {
  const AlphaConfig alphas = make_alphas(a);
  const EmbeddingModel model = load_model(std::filesystem::path(a.model));
  const auto labels = read_labels(a.labels);
  auto file = open_output(a.out);
  bool found = a.topic.empty();
  for (const auto& l : labels) {
    if (!a.topic.empty() && l.topic != a.topic) continue;
    found = true;
    const auto hits = retrieve(model, l, alphas.alpha_for(l.topic));
    write_hits(file, l.topic, hits);
    out << l.topic << ": " << hits.size() << " documents\n";
  }
  if (!found) throw DataError("topic not found in labels file: " + a.topic);
  return kExitOk;
}

int cmd_classify(const ScoreArgs& a, std::ostream& out) {
  const AlphaConfig alphas = make_alphas(a);
  const EmbeddingModel model = load_model(std::filesystem::path(a.model));
  const auto labels = read_labels(a.labels);
  const auto predictions = classify(model, labels, alphas);
  auto file = open_output(a.out);
  write_predictions(file, predictions);
  std::size_t accepted = 0;
  for (const auto& p : predictions) accepted += p.accepted ? 1 : 0;
  out << "classified: " << predictions.size() << ", accepted: " << accepted
      << ", unlabeled: " << predictions.size() - accepted << '\n';
  return kExitOk;
}

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  const Corpus corpus = ingest_jsonl(a.corpus);
  const auto gold = corpus.gold_labels();
  const auto predictions = read_predictions(a.predictions);
  const Prf prf = micro_prf(predictions, gold);

  const auto per_topic = one_vs_rest(predictions, gold);
  std::vector<std::pair<std::string, RocCurve>> curves;
  json topic_auc = json::object();
  for (const auto& t : per_topic) {
    auto curve = roc_auc(t.scores, t.positive);
    topic_auc[t.topic] = curve.auc;
    curves.emplace_back(t.topic, std::move(curve));
  }
  json summary = {{"micro_precision", prf.precision},
                  {"micro_recall", prf.recall},
                  {"micro_f1", prf.f1},
                  {"per_topic_auc", topic_auc}};
  if (per_topic.size() >= 2) {
    auto micro = micro_average_roc(per_topic);
    summary["micro_auc"] = micro.auc;
    curves.emplace_back("micro", std::move(micro));
  }
  if (!a.roc_out.empty()) {
    auto file = open_output(a.roc_out);
    write_roc_csv(file, curves);
  }
  if (!a.summary_out.empty()) {
    auto file = open_output(a.summary_out);
    file << summary.dump(2) << '\n';
  }
  out << "micro precision: " << prf.precision << '\n'
      << "micro recall: " << prf.recall << '\n'
      << "micro f1: " << prf.f1 << '\n';
  for (const auto& [topic, curve] : curves) out << "auc " << topic << ": " << curve.auc << '\n';
  return kExitOk;
}

std::map<std::string, double> read_auc_values(const std::string& path) {
  std::ifstream in(path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError("malformed AUC file " + path + ": " + e.what());
  }
  // Accepts either an evaluate summary or a flat {topic: auc} object.
  const json& table = doc.contains("per_topic_auc") ? doc["per_topic_auc"] : doc;
  if (!table.is_object()) throw DataError("AUC file must map topics to numbers");
  std::map<std::string, double> out;
  for (const auto& [topic, value] : table.items()) {
    if (!value.is_number()) throw DataError("AUC for topic '" + topic + "' is not a number");
    out[topic] = value.get<double>();
  }
  return out;
}

// A constant series has no defined rank correlation; report it as null.
std::optional<CorrelationResult> try_kendall(std::span<const double> x, std::span<const double> y) {
  if (std::adjacent_find(x.begin(), x.end(), std::not_equal_to<>()) == x.end() ||
      std::adjacent_find(y.begin(), y.end(), std::not_equal_to<>()) == y.end()) {
    return std::nullopt;
  }
  return kendall_tau(x, y);
}

json correlation_json(const std::optional<CorrelationResult>& c, std::size_t n) {
  if (!c) return {{"tau", nullptr}, {"p_value", nullptr}, {"n", n}, {"significant", false}};
  return {{"tau", c->tau}, {"p_value", c->p_value}, {"n", c->n},
          {"significant", c->p_value < kSignificanceLevel}};
}

std::string describe(const std::optional<CorrelationResult>& c) {
  if (!c) return "undefined (constant input)";
  std::ostringstream s;
  s << "tau " << c->tau << ", p " << c->p_value;
  return s.str();
}

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
  const auto topics = read_topics(a.keywords);
  const EmbeddingModel model = load_model(std::filesystem::path(a.model));
  const auto auc = read_auc_values(a.auc);

  std::vector<double> counts, intra, inter, aucs;
  json rows = json::array();
  for (std::size_t i = 0; i < topics.size(); ++i) {
    const auto it = auc.find(topics[i].name);
    if (it == auc.end()) throw DataError("no AUC value for topic '" + topics[i].name + "'");
    std::vector<TopicSpec> others;
    for (std::size_t j = 0; j < topics.size(); ++j) {
      if (j != i) others.push_back(topics[j]);
    }
    counts.push_back(static_cast<double>(topics[i].keywords.size()));
    intra.push_back(intratopic_similarity(model, topics[i]));
    inter.push_back(intertopic_similarity(model, topics[i], others));
    aucs.push_back(it->second);
    rows.push_back({{"topic", topics[i].name},
                    {"keyword_count", topics[i].keywords.size()},
                    {"intratopic_similarity", intra.back()},
                    {"intertopic_similarity", inter.back()},
                    {"auc", aucs.back()}});
  }
  if (topics.size() < 2) throw ValidationError("analyze-keywords needs at least two topics");
  const auto c1 = try_kendall(counts, aucs);
  const auto c2 = try_kendall(intra, aucs);
  const auto c3 = try_kendall(inter, aucs);
  const std::size_t n = topics.size();
  const json report = {{"significance_level", kSignificanceLevel},
                       {"topics", rows},
                       {"correlations",
                        {{"keyword_count_vs_auc", correlation_json(c1, n)},
                         {"intratopic_vs_auc", correlation_json(c2, n)},
                         {"intertopic_vs_auc", correlation_json(c3, n)}}}};
  auto file = open_output(a.out);
  file << report.dump(2) << '\n';
  out << "keyword count vs AUC: " << describe(c1) << '\n'
      << "intratopic similarity vs AUC: " << describe(c2) << '\n'
      << "intertopic similarity vs AUC: " << describe(c3) << '\n';
  return kExitOk;
}

void add_score_options(CLI::App* cmd, ScoreArgs& a) {
  cmd->add_option("--model", a.model, "Model file")->required()->check(kInputFile);
  cmd->add_option("--labels", a.labels, "Labels file")->required()->check(kInputFile);
  cmd->add_option("--out", a.out, "Output JSONL file")->required();
  cmd->add_option("--alpha", a.alpha, "Default similarity threshold")
      ->capture_default_str()
      ->check(CLI::Range(-1.0, 1.0));
  cmd->add_option("--alpha-file", a.alpha_file, "JSON object of per-topic alpha overrides")
      ->check(kInputFile);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Topic retrieval and classification with jointly embedded word, document, and label vectors"};
  app.require_subcommand(1);

  TrainArgs train_args;
  auto* train_cmd = app.add_subcommand("train", "Train word and document vectors on a JSONL corpus");
  train_cmd->add_option("--corpus", train_args.corpus, "JSONL corpus")->required()->check(kInputFile);
  train_cmd->add_option("--out", train_args.out, "Output model file")->required();
  train_cmd->add_option("--dim", train_args.config.dim)->capture_default_str()->check(CLI::PositiveNumber);
  train_cmd->add_option("--epochs", train_args.config.epochs)->capture_default_str()->check(CLI::PositiveNumber);
  train_cmd->add_option("--window", train_args.config.window)->capture_default_str()->check(CLI::PositiveNumber);
  train_cmd->add_option("--negatives", train_args.config.negatives)->capture_default_str()->check(CLI::PositiveNumber);
  train_cmd->add_option("--lr", train_args.config.initial_lr)->capture_default_str();
  train_cmd->add_option("--min-lr", train_args.config.min_lr)->capture_default_str();
  train_cmd->add_option("--min-count", train_args.min_count)->capture_default_str()->check(CLI::PositiveNumber);
  train_cmd->add_option("--sample", train_args.sample, "Subsampling threshold")->capture_default_str()->check(CLI::NonNegativeNumber);
  train_cmd->add_option("--seed", train_args.config.seed)->capture_default_str();
  train_cmd->add_option("--workers", train_args.config.workers)->capture_default_str()->check(CLI::PositiveNumber);

  LabelArgs label_args;
  auto* labels_cmd = app.add_subcommand("labels", "Learn one label embedding per topic");
  labels_cmd->add_option("--model", label_args.model, "Model file")->required()->check(kInputFile);
  labels_cmd->add_option("--keywords", label_args.keywords, "Keywords JSON")->required()->check(kInputFile);
  labels_cmd->add_option("--out", label_args.out, "Output labels JSON")->required();
  labels_cmd->add_option("--s", label_args.params.s, "Candidate similarity threshold")
      ->capture_default_str()
      ->check(CLI::Range(-1.0, 1.0));
  labels_cmd->add_option("--dmin", label_args.params.d_min)->capture_default_str()->check(CLI::PositiveNumber);
  labels_cmd->add_option("--dmax", label_args.params.d_max, "0 selects up to every document")->capture_default_str();
  labels_cmd->add_option("--lof-k", label_args.params.lof.k)->capture_default_str()->check(CLI::PositiveNumber);
  labels_cmd->add_option("--lof-threshold", label_args.params.lof.score_threshold)->capture_default_str()->check(CLI::PositiveNumber);

  ScoreArgs retrieve_args;
  auto* retrieve_cmd = app.add_subcommand("retrieve", "List documents above alpha for each topic");
  add_score_options(retrieve_cmd, retrieve_args);
  retrieve_cmd->add_option("--topic", retrieve_args.topic, "Restrict to one topic");

  ScoreArgs classify_args;
  auto* classify_cmd = app.add_subcommand("classify", "Assign each document its most similar topic");
  add_score_options(classify_cmd, classify_args);

  EvaluateArgs eval_args;
  auto* eval_cmd = app.add_subcommand("evaluate", "Micro P/R/F1 and ROC/AUC against gold labels");
  eval_cmd->add_option("--corpus", eval_args.corpus, "JSONL corpus with labels")->required()->check(kInputFile);
  eval_cmd->add_option("--predictions", eval_args.predictions, "Predictions JSONL")->required()->check(kInputFile);
  eval_cmd->add_option("--roc-out", eval_args.roc_out, "ROC curve CSV");
  eval_cmd->add_option("--summary-out", eval_args.summary_out, "Summary JSON");

  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze-keywords", "Keyword similarity statistics and their rank correlation with AUC");
  analyze_cmd->add_option("--model", analyze_args.model, "Model file")->required()->check(kInputFile);
  analyze_cmd->add_option("--keywords", analyze_args.keywords, "Keywords JSON")->required()->check(kInputFile);
  analyze_cmd->add_option("--auc", analyze_args.auc, "Evaluate summary JSON or {topic: auc}")->required()->check(kInputFile);
  analyze_cmd->add_option("--out", analyze_args.out, "Report JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train_cmd) return cmd_train(train_args, out);
    if (*labels_cmd) return cmd_labels(label_args, out);
    if (*retrieve_cmd) return cmd_retrieve(retrieve_args, out);
    if (*classify_cmd) return cmd_classify(classify_args, out);
    if (*eval_cmd) return cmd_evaluate(eval_args, out);
    if (*analyze_cmd) return cmd_analyze(analyze_args, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}

}  // namespace lbl2vec::cli
