// Acceptance suite: one PASS/FAIL/SKIP line per criterion, nonzero exit on
// any failure. Each criterion also has a wall-clock budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "cli.hpp"
#include "lbl2vec/corpus.hpp"
#include "lbl2vec/embedding.hpp"
#include "lbl2vec/evaluation.hpp"
#include "lbl2vec/formats.hpp"
#include "lbl2vec/labeling.hpp"
#include "lbl2vec/lof.hpp"
#include "lbl2vec/retrieval.hpp"
#include "lbl2vec/sgns.hpp"
#include "support/models.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"
#include "support/tempdir.hpp"

using namespace lbl2vec;
namespace ts = lbl2vec::test_support;

namespace {

enum class Status { Pass, Fail, Skip };

struct Outcome {
  Status status;
  std::string detail;
};

struct Criterion {
  std::string id;
  std::string name;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome verdict(bool ok, std::string detail) { return {ok ? Status::Pass : Status::Fail, std::move(detail)}; }

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Matrix<double> to_matrix(const std::vector<std::vector<double>>& rows) {
  Matrix<double> m;
  for (const auto& r : rows) m.append_row(r);
  return m;
}

// --- gradients --------------------------------------------------------------

Outcome gradient_oracle() {
  std::mt19937_64 rng(101);
  std::normal_distribution<double> g(0.0, 0.7);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 2 + rng() % 31;
    const std::size_t vocab = 16;
    Matrix<double> output(vocab, dim);
    for (auto& x : output.values()) x = g(rng);
    std::vector<double> input(dim);
    for (auto& x : input) x = g(rng);
    std::vector<std::uint32_t> ids(vocab);
    std::iota(ids.begin(), ids.end(), 0u);
    std::shuffle(ids.begin(), ids.end(), rng);
    std::vector<SampleTarget> targets{{ids[0], true}};
    const std::size_t negs = 1 + rng() % 10;
    for (std::size_t n = 1; n <= negs; ++n) targets.push_back({ids[n], false});

    std::vector<double> v = input, scratch(dim);
    Matrix<double> u = output;
    negative_sampling_update<double>(v, u, targets, 1.0, scratch);

    std::vector<double> analytic(dim);
    for (std::size_t j = 0; j < dim; ++j) analytic[j] = input[j] - v[j];
    const auto fd = ts::finite_difference(
        [&](const std::vector<double>& x) { return negative_sampling_loss<double>(x, output, targets); }, input);
    worst = std::max(worst, ts::relative_error(analytic, fd));

    for (const auto& t : targets) {
      std::vector<double> row(output.row(t.index).begin(), output.row(t.index).end());
      std::vector<double> analytic_u(dim);
      for (std::size_t j = 0; j < dim; ++j) analytic_u[j] = output(t.index, j) - u(t.index, j);
      const auto fd_u = ts::finite_difference(
          [&](const std::vector<double>& x) {
            Matrix<double> o = output;
            std::copy(x.begin(), x.end(), o.row(t.index).begin());
            return negative_sampling_loss<double>(input, o, targets);
          },
          row);
      worst = std::max(worst, ts::relative_error(analytic_u, fd_u));
    }
  }
  return verdict(worst < 1e-4, fmt("max relative error %.3g over 100 configurations (limit 1e-4)", worst));
}

// --- LOF --------------------------------------------------------------------

Outcome lof_oracle() {
  std::mt19937_64 rng(202);
  std::normal_distribution<double> g;
  std::uniform_int_distribution<int> lattice(0, 4);
  const int ks[] = {2, 5, 20};
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 3 + rng() % 198;
    const std::size_t dim = 1 + rng() % 8;
    const bool ties = trial % 4 == 0;
    std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
    for (auto& p : pts) {
      for (auto& x : p) x = ties ? double(lattice(rng)) : g(rng);
    }
    const int k = ks[trial % 3];
    const auto got = lof_scores(to_matrix(pts), k);
    const auto want = ts::brute_force_lof(pts, k);
    for (std::size_t i = 0; i < n; ++i) {
      // Coincident points make both sides hit the same density cap; compare
      // relative to magnitude there.
      const double err = std::abs(got[i] - want[i]) / std::max(1.0, std::abs(want[i]));
      worst = std::max(worst, err);
    }
  }
  return verdict(worst <= 1e-9, fmt("max deviation %.3g over 50 instances, k in {2,5,20} (limit 1e-9)", worst));
}

// --- AUC --------------------------------------------------------------------

Outcome auc_dual_method() {
  std::mt19937_64 rng(303);
  double worst = 0.0;
  int with_ties = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng() % 300;
    const int levels = 2 + static_cast<int>(rng() % 20);
    std::uniform_int_distribution<int> level(0, levels - 1);
    std::vector<double> scores(n);
    std::vector<bool> positive(n);
    for (std::size_t i = 0; i < n; ++i) {
      scores[i] = level(rng) / double(levels);
      positive[i] = rng() % 2;
    }
    positive[0] = true;
    positive[1] = false;
    auto sorted = scores;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) ++with_ties;
    const double trapezoid = roc_auc(scores, positive).auc;
    worst = std::max(worst, std::abs(trapezoid - ts::mann_whitney_auc(scores, positive)));
  }
  return verdict(worst <= 1e-12 && with_ties > 0,
                 fmt("max |trapezoid - pairwise| %.3g over 100 instances, %d with tied scores (limit 1e-12)", worst,
                     with_ties));
}

// --- Kendall ----------------------------------------------------------------

Outcome kendall_reproduction() {
  struct Row {
    double tau, published;
  };
  const Row rows[] = {{0.19, 0.20}, {0.33, 0.02}, {-0.35, 0.02}};
  bool ok = true;
  std::string detail;
  for (const auto& r : rows) {
    const double p = kendall_p_value(r.tau, 24);
    ok = ok && std::abs(p - r.published) <= 0.01;
    detail += fmt("tau %.2f -> p %.4f (published %.2f); ", r.tau, p, r.published);
  }
  detail += "n = 24, tolerance 0.01";
  return verdict(ok, detail);
}

// --- synthetic end-to-end ---------------------------------------------------

struct PipelineScores {
  double f1 = 0.0;
  std::vector<std::pair<std::string, double>> auc;
};

PipelineScores run_pipeline(const Corpus& corpus, std::span<const TopicSpec> topics, const TrainConfig& config,
                            const LabelParams& params) {
  const auto vocabulary = build_vocabulary(corpus);
  const auto model = train(corpus, vocabulary, config);
  std::vector<LabelEmbedding> labels;
  for (auto& r : compute_label_embeddings(model, topics, params)) labels.push_back(std::move(r.label));
  const auto predictions = classify(model, labels, AlphaConfig{});
  const auto gold = corpus.gold_labels();
  PipelineScores out;
  out.f1 = micro_prf(predictions, gold).f1;
  for (const auto& t : one_vs_rest(predictions, gold)) out.auc.emplace_back(t.topic, roc_auc(t.scores, t.positive).auc);
  return out;
}

Outcome synthetic_end_to_end() {
  std::vector<double> f1s;
  std::map<std::string, std::vector<double>> aucs;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto synthetic = ts::make_synthetic({.seed = seed});
    TrainConfig config;
    config.seed = seed;
    const auto scores = run_pipeline(synthetic.corpus(), synthetic.topics, config, LabelParams{});
    f1s.push_back(scores.f1);
    for (const auto& [topic, auc] : scores.auc) aucs[topic].push_back(auc);
  }
  const double f1 = median(f1s);
  double worst_auc = 1.0;
  std::string per_topic;
  for (const auto& [topic, values] : aucs) {
    const double m = median(values);
    worst_auc = std::min(worst_auc, m);
    per_topic += fmt(" %s=%.4f", topic.c_str(), m);
  }
  return verdict(f1 >= 0.95 && worst_auc >= 0.98 && aucs.size() == 3,
                 fmt("median micro-F1 %.4f (>= 0.95), median AUC", f1) + per_topic + " (>= 0.98), 5 seeds");
}

// --- candidate selection ----------------------------------------------------

Outcome candidate_selection_contract() {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  int checks = 0;
  std::string failure;
  auto expect = [&](bool ok, const std::string& what) {
    ++checks;
    if (!ok && failure.empty()) failure = what;
  };
  for (int trial = 0; trial < 200 && failure.empty(); ++trial) {
    const std::size_t docs = 5 + rng() % 400;
    const std::size_t dim = 2 + rng() % 20;
    const auto model = ts::random_model(4, docs, dim, rng);
    std::vector<double> query(dim);
    for (auto& x : query) x = unit(rng);

    LabelParams p;
    p.d_min = 1 + rng() % docs;
    p.d_max = rng() % 2 ? 0 : p.d_min + rng() % (docs - p.d_min + 1);
    p.s = unit(rng);
    const std::size_t d_max = p.resolved_d_max(docs);
    const auto base = select_candidates(model, query, p);
    const std::size_t count = base.ranked_candidate_ids.size();
    const std::string tag = fmt("trial %d", trial);
    expect(count >= p.d_min && count <= d_max, tag + ": size outside [d_min, d_max]");

    LabelParams higher = p;
    higher.s = std::min(1.0, p.s + std::abs(unit(rng)));
    const auto fewer = select_candidates(model, query, higher).ranked_candidate_ids;
    expect(fewer.size() <= count && std::equal(fewer.begin(), fewer.end(), base.ranked_candidate_ids.begin()),
           tag + ": raising s did not shrink to a prefix");

    if (p.d_min < d_max) {
      LabelParams more = p;
      more.d_min = p.d_min + 1 + rng() % (d_max - p.d_min);
      const auto grown = select_candidates(model, query, more).ranked_candidate_ids;
      expect(grown.size() >= count && std::equal(base.ranked_candidate_ids.begin(),
                                                  base.ranked_candidate_ids.end(), grown.begin()),
             tag + ": raising d_min did not grow from a prefix");
    }

    LabelParams strict = p;
    strict.s = 1.0;
    expect(select_candidates(model, query, strict).ranked_candidate_ids.size() == p.d_min,
           tag + ": s = 1 did not yield exactly d_min");
  }
  if (!failure.empty()) return {Status::Fail, failure};
  return {Status::Pass, fmt("%d property checks on 200 random models", checks)};
}

// --- full-size datasets -----------------------------------------------------

Outcome full_size_datasets() {
  const char* root = std::getenv("LBL2VEC_DATASETS");
  if (root == nullptr || *root == '\0') {
    return {Status::Skip, "set LBL2VEC_DATASETS to a directory with 20newsgroups/ and ag_news/"};
  }
  struct Dataset {
    const char* dir;
    double s, f1, auc;
  };
  const Dataset sets[] = {{"20newsgroups", 0.43, 0.751, 0.92}, {"ag_news", 0.30, 0.827, 0.95}};
  bool ok = true;
  std::string detail;
  for (const auto& d : sets) {
    const auto base = std::filesystem::path(root) / d.dir;
    const auto corpus = ingest_jsonl(base / "corpus.jsonl");
    const auto topics = read_topics(base / "keywords.json");
    TrainConfig config;
    config.workers = std::max(1u, std::thread::hardware_concurrency());
    LabelParams params;
    params.s = d.s;
    const auto scores = run_pipeline(corpus, topics, config, params);
    double mean_auc = 0.0;
    for (const auto& [topic, auc] : scores.auc) mean_auc += auc / scores.auc.size();
    const bool pass = std::abs(scores.f1 - d.f1) <= 0.03 && std::abs(mean_auc - d.auc) <= 0.02;
    ok = ok && pass;
    detail += fmt("%s: micro-F1 %.3f (target %.3f +/- 0.030), mean AUC %.3f (target %.2f +/- 0.02); ", d.dir,
                  scores.f1, d.f1, mean_auc, d.auc);
  }
  return verdict(ok, detail);
}

// --- determinism ------------------------------------------------------------

int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "lbl2vec");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
}

Outcome determinism() {
  ts::TempDir dir;
  const auto synthetic = ts::make_synthetic({.docs_per_topic = 67, .seed = 11});
  std::string jsonl;
  for (std::size_t i = 0; i < synthetic.texts.size(); ++i) {
    jsonl += nlohmann::json{{"text", synthetic.texts[i]}, {"label", *synthetic.labels[i]}}.dump() + "\n";
  }
  ts::write_file(dir.file("corpus.jsonl"), jsonl);
  for (const char* name : {"a.bin", "b.bin"}) {
    if (cli({"train", "--corpus", dir.file("corpus.jsonl"), "--seed", "5", "--workers", "1", "--out",
             dir.file(name)}) != 0) {
      return {Status::Fail, "train exited nonzero"};
    }
  }
  const std::string a = ts::read_file(dir.file("a.bin"));
  const bool same_files = a == ts::read_file(dir.file("b.bin"));

  const auto loaded = load_model(std::filesystem::path(dir.file("a.bin")));
  std::ostringstream resaved;
  save_model(loaded, resaved);
  std::istringstream again(resaved.str());
  const bool round_trip = resaved.str() == a && bitwise_equal(load_model(again), loaded);
  return verdict(same_files && round_trip,
                 fmt("two train runs %s (%zu bytes); save/load round trip %s", same_files ? "identical" : "DIFFER",
                     a.size(), round_trip ? "bitwise exact" : "NOT exact"));
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"AC1", "negative-sampling gradient oracle", 10, gradient_oracle},
      {"AC2", "LOF brute-force oracle", 30, lof_oracle},
      {"AC3", "AUC trapezoid vs pairwise", 10, auc_dual_method},
      {"AC4", "Kendall p-value reproduction", 1, kendall_reproduction},
      {"AC5", "synthetic end-to-end", 120, synthetic_end_to_end},
      {"AC6", "candidate-selection contract", 30, candidate_selection_contract},
      {"AC7", "full-size dataset reproduction", 1e9, full_size_datasets},
      {"AC8", "training determinism and model round trip", 60, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {Status::Fail, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (outcome.status == Status::Pass && seconds > c.budget_seconds) {
      outcome.status = Status::Fail;
      outcome.detail += fmt("; over time budget of %.0f s", c.budget_seconds);
    }
    const char* label = outcome.status == Status::Pass ? "PASS" : outcome.status == Status::Fail ? "FAIL" : "SKIP";
    if (outcome.status == Status::Fail) ++failures;
    std::printf("%s %s %s: %s [%.2f s]\n", label, c.id.c_str(), c.name.c_str(), outcome.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("%d failed\n", failures);
  return failures == 0 ? 0 : 1;
}
