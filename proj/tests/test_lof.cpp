#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "lbl2vec/error.hpp"
#include "lbl2vec/lof.hpp"
#include "lbl2vec/reference.hpp"
#include "support/oracles.hpp"

using namespace lbl2vec;

namespace {

Matrix<double> to_matrix(const std::vector<std::vector<double>>& rows) {
  Matrix<double> m;
  for (const auto& r : rows) m.append_row(r);
  return m;
}

std::vector<std::vector<double>> grid_with_outlier() {
  std::vector<std::vector<double>> pts;
  for (int x = 0; x < 5; ++x) {
    for (int y = 0; y < 2; ++y) pts.push_back({double(x), double(y)});
  }
  pts.push_back({2.0, 100.5});  // ~100 away from the grid
  return pts;
}

std::vector<std::vector<double>> random_points(std::mt19937_64& rng, std::size_t n, std::size_t dim,
                                               bool with_ties) {
  std::normal_distribution<double> g;
  std::uniform_int_distribution<int> lattice(0, 3);
  std::vector<std::vector<double>> pts(n, std::vector<double>(dim));
  for (auto& p : pts) {
    for (auto& x : p) x = with_ties ? double(lattice(rng)) : g(rng);
  }
  return pts;
}

}  // namespace

TEST(Lof, SquareCornersAreAllOne) {
  const auto pts = to_matrix({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  for (const double s : lof_scores(pts, 2)) EXPECT_EQ(s, 1.0);
}

TEST(Lof, FarPointIsAnOutlier) {
  const auto pts = grid_with_outlier();
  const auto scores = lof_scores(to_matrix(pts), 3);
  const auto oracle = test_support::brute_force_lof(pts, 3);
  for (std::size_t i = 0; i < scores.size(); ++i) EXPECT_NEAR(scores[i], oracle[i], 1e-9);
  EXPECT_GT(scores.back(), 10.0);
  for (std::size_t i = 0; i + 1 < scores.size(); ++i) EXPECT_LT(scores[i], 1.2) << i;
}

TEST(Lof, MatchesBruteForceOracle) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + rng() % 120;
    const bool ties = trial % 3 == 0;
    const auto pts = random_points(rng, n, 1 + rng() % 6, ties);
    for (const int k : {1, 2, 5, 20, 500}) {
      const auto scores = lof_scores(to_matrix(pts), k);
      const auto oracle = test_support::brute_force_lof(pts, k);
      for (std::size_t i = 0; i < n; ++i) {
        ASSERT_NEAR(scores[i], oracle[i], 1e-9 * std::max(1.0, std::abs(oracle[i])))
            << "trial " << trial << " k " << k << " i " << i;
      }
    }
  }
}

TEST(Lof, MatchesSerialReference) {
  std::mt19937_64 rng(23);
  const auto pts = to_matrix(random_points(rng, 150, 8, false));
  const auto a = lof_scores(pts, 10);
  const auto b = reference::lof_scores(pts, 10);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], 1e-12);
}

TEST(Lof, PermutationEquivariant) {
  std::mt19937_64 rng(31);
  const auto pts = random_points(rng, 80, 4, false);
  std::vector<std::size_t> perm(pts.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::vector<double>> shuffled;
  for (const auto i : perm) shuffled.push_back(pts[i]);
  const auto a = lof_scores(to_matrix(pts), 7);
  const auto b = lof_scores(to_matrix(shuffled), 7);
  for (std::size_t j = 0; j < perm.size(); ++j) EXPECT_NEAR(b[j], a[perm[j]], 1e-12);
}

TEST(Lof, ScaleInvariant) {
  std::mt19937_64 rng(37);
  const auto pts = random_points(rng, 60, 3, false);
  const auto base = lof_scores(to_matrix(pts), 5);
  for (const double c : {0.001, 2.0, 1000.0}) {
    auto scaled = pts;
    for (auto& p : scaled) {
      for (auto& x : p) x *= c;
    }
    const auto s = lof_scores(to_matrix(scaled), 5);
    for (std::size_t i = 0; i < s.size(); ++i) EXPECT_NEAR(s[i], base[i], 1e-9) << c;
  }
}

TEST(Lof, DuplicatesAreFinite) {
  const auto all_same = to_matrix({{1, 2}, {1, 2}, {1, 2}, {1, 2}});
  for (const double s : lof_scores(all_same, 2)) EXPECT_EQ(s, 1.0);
  const auto mixed = to_matrix({{0, 0}, {0, 0}, {0, 0}, {5, 5}});
  for (const double s : lof_scores(mixed, 2)) EXPECT_TRUE(std::isfinite(s));
}

TEST(Lof, Errors) {
  EXPECT_THROW(lof_scores(to_matrix({{1, 2}}), 1), ValidationError);
  EXPECT_THROW(lof_scores(to_matrix({{1, 2}, {3, 4}}), 0), ValidationError);
  LofParams bad;
  bad.score_threshold = 0.0;
  EXPECT_THROW(bad.validate(), ValidationError);
}

TEST(FilterOutliers, KeepsSquare) {
  const auto r = filter_outliers(to_matrix({{0, 0}, {1, 0}, {0, 1}, {1, 1}}), {2, 1.5});
  EXPECT_EQ(r.kept, (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_FALSE(r.fallback);
}

TEST(FilterOutliers, RemovesFarPoint) {
  const auto pts = grid_with_outlier();
  const auto r = filter_outliers(to_matrix(pts), {3, 1.5});
  std::vector<std::size_t> expected(pts.size() - 1);
  std::iota(expected.begin(), expected.end(), 0);
  EXPECT_EQ(r.kept, expected);
}

TEST(FilterOutliers, IdenticalPointsAllKept) {
  const auto r = filter_outliers(to_matrix({{3, 3}, {3, 3}, {3, 3}}), {20, 1.5});
  EXPECT_EQ(r.kept, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(FilterOutliers, NeverEmpty) {
  // A threshold below every score forces the fallback.
  const auto pts = grid_with_outlier();
  const auto r = filter_outliers(to_matrix(pts), {3, 1e-6});
  ASSERT_EQ(r.kept.size(), 1u);
  EXPECT_TRUE(r.fallback);
  const auto best = std::min_element(r.scores.begin(), r.scores.end()) - r.scores.begin();
  EXPECT_EQ(r.kept[0], static_cast<std::size_t>(best));
}
