// Parallel kernels against their serial references, plus training throughput
// by worker count.

#include <random>
#include <thread>

#include <benchmark/benchmark.h>

#include "lbl2vec/embedding.hpp"
#include "lbl2vec/kernels.hpp"
#include "lbl2vec/lof.hpp"
#include "lbl2vec/reference.hpp"
#include "support/synthetic.hpp"

using namespace lbl2vec;

namespace {

Matrix<float> random_rows(std::size_t n, std::size_t dim) {
  std::mt19937_64 rng(1);
  std::normal_distribution<float> g;
  Matrix<float> m(n, dim);
  for (auto& x : m.values()) x = g(rng);
  return m;
}

Matrix<double> random_points(std::size_t n, std::size_t dim) {
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  Matrix<double> m(n, dim);
  for (auto& x : m.values()) x = g(rng);
  return m;
}

template <bool Parallel>
void BM_CosineMatrix(benchmark::State& state) {
  const auto docs = random_rows(static_cast<std::size_t>(state.range(0)), 300);
  const auto labels = random_points(20, 300);
  for (auto _ : state) {
    if constexpr (Parallel) {
      benchmark::DoNotOptimize(cosine_matrix(docs, labels));
    } else {
      benchmark::DoNotOptimize(reference::cosine_matrix(docs, labels));
    }
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 20);
}

template <bool Parallel>
void BM_Lof(benchmark::State& state) {
  const auto points = random_points(static_cast<std::size_t>(state.range(0)), 300);
  for (auto _ : state) {
    if constexpr (Parallel) {
      benchmark::DoNotOptimize(lof_scores(points, 20));
    } else {
      benchmark::DoNotOptimize(reference::lof_scores(points, 20));
    }
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

void BM_Train(benchmark::State& state) {
  const auto synthetic = test_support::make_synthetic({.docs_per_topic = 100});
  const auto corpus = synthetic.corpus();
  const auto vocabulary = build_vocabulary(corpus);
  TrainConfig config;
  config.dim = 100;
  config.epochs = 2;
  config.workers = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(train(corpus, vocabulary, config));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(corpus.token_count()) * config.epochs);
}

const int kMaxWorkers = static_cast<int>(std::max(2u, std::thread::hardware_concurrency()));

}  // namespace

BENCHMARK(BM_CosineMatrix<true>)->Name("cosine_matrix/parallel")->Arg(1000)->Arg(10000);
BENCHMARK(BM_CosineMatrix<false>)->Name("cosine_matrix/serial")->Arg(1000)->Arg(10000);
BENCHMARK(BM_Lof<true>)->Name("lof/parallel")->Arg(200)->Arg(1000);
BENCHMARK(BM_Lof<false>)->Name("lof/serial")->Arg(200)->Arg(1000);
BENCHMARK(BM_Train)->Name("train/workers")->Arg(1)->Arg(kMaxWorkers)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
