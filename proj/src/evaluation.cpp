#include "lbl2vec/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "lbl2vec/error.hpp"
#include "lbl2vec/kernels.hpp"

namespace lbl2vec {
namespace {

const std::string& gold_for(std::span<const std::optional<std::string>> gold, std::uint32_t doc_id) {
  if (doc_id >= gold.size() || !gold[doc_id]) {
    throw DataError("missing gold label for doc " + std::to_string(doc_id));
  }
  return *gold[doc_id];
}

Matrix<double> keyword_vectors(const EmbeddingModel& model, const TopicSpec& topic) {
  Matrix<double> m;
  std::vector<double> buf(model.dim());
  for (const auto& kw : topic.keywords) {
    const auto idx = model.vocabulary.index_of(kw);
    if (!idx) continue;
    const auto v = model.word_vectors.row(*idx);
    std::copy(v.begin(), v.end(), buf.begin());
    m.append_row(buf);
  }
  return m;
}

double mean_cross_cosine(const Matrix<double>& a, const Matrix<double>& b) {
  double sum = 0.0;
  for (std::size_t x = 0; x < a.rows(); ++x) {
    for (std::size_t y = 0; y < b.rows(); ++y) sum += cosine_similarity(a.row(x), b.row(y));
  }
  return sum / static_cast<double>(a.rows() * b.rows());
}

// Sum over tie groups of f(group size).
template <typename F>
double tie_sum(std::vector<double> values, F f) {
  std::sort(values.begin(), values.end());
  double acc = 0.0;
  std::size_t i = 0;
  while (i < values.size()) {
    std::size_t j = i + 1;
    while (j < values.size() && values[j] == values[i]) ++j;
    const double t = static_cast<double>(j - i);
    if (j - i > 1) acc += f(t);
    i = j;
  }
  return acc;
}

double two_sided_normal_p(double z) {
  return std::min(1.0, std::erfc(std::abs(z) / std::sqrt(2.0)));
}

}  // namespace

Prf micro_prf(std::span<const Prediction> predictions,
              std::span<const std::optional<std::string>> gold) {
  std::uint64_t tp = 0, fp = 0, fn = 0;
  for (const auto& p : predictions) {
    const auto& truth = gold_for(gold, p.doc_id);
    if (p.accepted && p.assigned_topic) {
      if (*p.assigned_topic == truth) {
        ++tp;
      } else {
        ++fp;
        ++fn;
      }
    } else {
      ++fn;
    }
  }
  Prf out;
  const double t = static_cast<double>(tp);
  if (tp + fp > 0) out.precision = t / static_cast<double>(tp + fp);
  if (tp + fn > 0) out.recall = t / static_cast<double>(tp + fn);
  // Count form keeps F1 bitwise equal to P and R when FP == FN.
  if (tp > 0) out.f1 = 2.0 * t / static_cast<double>(2 * tp + fp + fn);
  return out;
}

RocCurve roc_auc(std::span<const double> scores, const std::vector<bool>& is_positive) {
  if (scores.size() != is_positive.size()) throw ValidationError("scores and labels differ in length");
  std::uint64_t pos = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (std::isnan(scores[i])) throw ValidationError("NaN score at index " + std::to_string(i));
    if (is_positive[i]) ++pos;
  }
  const std::uint64_t neg = scores.size() - pos;
  if (pos == 0 || neg == 0) throw ValidationError("ROC needs at least one positive and one negative");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

  RocCurve curve;
  curve.points.push_back({std::numeric_limits<double>::infinity(), 0.0, 0.0});
  std::uint64_t tp = 0, fp = 0;
  // Twice the area, in units of one (positive, negative) pair.
  std::uint64_t doubled_area = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    const double threshold = scores[order[i]];
    const std::uint64_t tp_before = tp, fp_before = fp;
    while (i < order.size() && scores[order[i]] == threshold) {
      if (is_positive[order[i]]) ++tp; else ++fp;
      ++i;
    }
    doubled_area += (fp - fp_before) * (tp + tp_before);
    curve.points.push_back({threshold, static_cast<double>(fp) / static_cast<double>(neg),
                            static_cast<double>(tp) / static_cast<double>(pos)});
  }
  curve.auc = static_cast<double>(doubled_area) / (2.0 * static_cast<double>(pos) * static_cast<double>(neg));
  return curve;
}

std::vector<TopicScores> one_vs_rest(std::span<const Prediction> predictions,
                                     std::span<const std::optional<std::string>> gold) {
  if (predictions.empty()) throw ValidationError("no predictions");
  std::vector<TopicScores> out;
  for (const auto& s : predictions.front().scores) out.push_back({s.topic, {}, {}});
  for (const auto& p : predictions) {
    const auto& truth = gold_for(gold, p.doc_id);
    if (p.scores.size() != out.size()) throw DataError("inconsistent topic scores for doc " + std::to_string(p.doc_id));
    for (std::size_t j = 0; j < out.size(); ++j) {
      if (p.scores[j].topic != out[j].topic) throw DataError("inconsistent topic order for doc " + std::to_string(p.doc_id));
      out[j].scores.push_back(p.scores[j].similarity);
      out[j].positive.push_back(truth == out[j].topic);
    }
  }
  return out;
}

RocCurve micro_average_roc(std::span<const TopicScores> topics) {
  if (topics.size() < 2) throw ValidationError("micro-average ROC needs at least two topics");
  std::vector<double> scores;
  std::vector<bool> positive;
  for (const auto& t : topics) {
    if (t.scores.size() != t.positive.size()) throw ValidationError("scores and labels differ in length");
    scores.insert(scores.end(), t.scores.begin(), t.scores.end());
    positive.insert(positive.end(), t.positive.begin(), t.positive.end());
  }
  return roc_auc(scores, positive);
}

double intratopic_similarity(const EmbeddingModel& model, const TopicSpec& topic) {
  const auto k = keyword_vectors(model, topic);
  if (k.rows() < 2) {
    throw DataError("topic '" + topic.name + "' needs at least two in-vocabulary keywords");
  }
  double sum = 0.0;
  for (std::size_t x = 0; x < k.rows(); ++x) {
    for (std::size_t y = 0; y < k.rows(); ++y) {
      if (x != y) sum += cosine_similarity(k.row(x), k.row(y));
    }
  }
  const double m = static_cast<double>(k.rows());
  return sum / (m * (m - 1.0));
}

double intertopic_similarity(const EmbeddingModel& model, const TopicSpec& topic,
                             std::span<const TopicSpec> others) {
  if (others.empty()) throw ValidationError("intertopic similarity needs at least one other topic");
  const auto own = keyword_vectors(model, topic);
  if (own.rows() == 0) throw DataError("topic '" + topic.name + "' has no in-vocabulary keywords");
  double sum = 0.0;
  for (const auto& other : others) {
    const auto k = keyword_vectors(model, other);
    if (k.rows() == 0) throw DataError("topic '" + other.name + "' has no in-vocabulary keywords");
    sum += mean_cross_cosine(own, k);
  }
  return sum / static_cast<double>(others.size());
}

CorrelationResult kendall_tau(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("kendall_tau: inputs differ in length");
  const std::size_t n = x.size();
  if (n < 3) throw ValidationError("kendall_tau needs at least three pairs");

  std::int64_t concordant = 0, discordant = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = x[i] - x[j];
      const double dy = y[i] - y[j];
      if (dx == 0.0 || dy == 0.0) continue;
      if ((dx > 0.0) == (dy > 0.0)) ++concordant; else ++discordant;
    }
  }

  const std::vector<double> xs(x.begin(), x.end());
  const std::vector<double> ys(y.begin(), y.end());
  const double nd = static_cast<double>(n);
  const double n0 = nd * (nd - 1.0) / 2.0;
  const double n1 = tie_sum(xs, [](double t) { return t * (t - 1.0) / 2.0; });
  const double n2 = tie_sum(ys, [](double t) { return t * (t - 1.0) / 2.0; });
  if (n1 == n0 || n2 == n0) throw ValidationError("kendall_tau: constant input");

  const double s = static_cast<double>(concordant - discordant);
  CorrelationResult out;
  out.n = n;
  out.tau = std::clamp(s / std::sqrt((n0 - n1) * (n0 - n2)), -1.0, 1.0);

  // Variance of S under independence, adjusted for ties in either input.
  const double v0 = nd * (nd - 1.0) * (2.0 * nd + 5.0);
  const double vt = tie_sum(xs, [](double t) { return t * (t - 1.0) * (2.0 * t + 5.0); });
  const double vu = tie_sum(ys, [](double t) { return t * (t - 1.0) * (2.0 * t + 5.0); });
  const double v1 = tie_sum(xs, [](double t) { return t * (t - 1.0); }) *
                    tie_sum(ys, [](double t) { return t * (t - 1.0); });
  const double v2 = tie_sum(xs, [](double t) { return t * (t - 1.0) * (t - 2.0); }) *
                    tie_sum(ys, [](double t) { return t * (t - 1.0) * (t - 2.0); });
  const double var = (v0 - vt - vu) / 18.0 + v1 / (2.0 * nd * (nd - 1.0)) +
                     v2 / (9.0 * nd * (nd - 1.0) * (nd - 2.0));
  out.p_value = two_sided_normal_p(s / std::sqrt(var));
  return out;
}

double kendall_p_value(double tau, std::size_t n) {
  if (n < 3) throw ValidationError("kendall_p_value needs n >= 3");
  if (!(tau >= -1.0 && tau <= 1.0)) throw ValidationError("tau must lie in [-1, 1]");
  const double nd = static_cast<double>(n);
  return two_sided_normal_p(tau / std::sqrt(2.0 * (2.0 * nd + 5.0) / (9.0 * nd * (nd - 1.0))));
}

}  // namespace lbl2vec
