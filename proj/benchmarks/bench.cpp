#include <benchmark/benchmark.h>

#include <string>
#include <utility>
#include <vector>

#include "skewlens/classifier.hpp"
#include "skewlens/divergence.hpp"
#include "skewlens/features.hpp"
#include "skewlens/metrics.hpp"
#include "skewlens/rng.hpp"

using namespace skewlens;

namespace {

std::vector<std::string> make_tokens(std::size_t n) {
  std::vector<std::string> tokens;
  Rng rng(7);
  for (std::size_t i = 0; i < n; ++i)
    tokens.push_back("tok" + std::to_string(rng.uniform_index(500)));
  return tokens;
}

std::vector<std::pair<double, double>> make_pairs(std::size_t n,
                                                  std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::pair<double, double>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    pairs.emplace_back(rng.uniform_real(), rng.uniform_real());
  return pairs;
}

void bm_hash_ngrams(benchmark::State& state) {
  auto tokens = make_tokens(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(features::hash_ngrams(tokens, 4096, 2));
}
BENCHMARK(bm_hash_ngrams)->Arg(16)->Arg(64)->Arg(256);

void bm_wilcoxon_exact(benchmark::State& state) {
  auto pairs = make_pairs(static_cast<std::size_t>(state.range(0)), 3);
  for (auto _ : state)
    benchmark::DoNotOptimize(divergence::wilcoxon_signed_rank(
        pairs, divergence::WilcoxonMode::exact));
}
BENCHMARK(bm_wilcoxon_exact)->Arg(10)->Arg(20)->Arg(25);

void bm_wilcoxon_normal(benchmark::State& state) {
  auto pairs = make_pairs(static_cast<std::size_t>(state.range(0)), 5);
  for (auto _ : state)
    benchmark::DoNotOptimize(divergence::wilcoxon_signed_rank(
        pairs, divergence::WilcoxonMode::normal));
}
BENCHMARK(bm_wilcoxon_normal)->Arg(100)->Arg(10000);

void bm_forward_sparse(benchmark::State& state) {
  auto params = classifier::ModelParams::zeros(2, 4096);
  Rng rng(11);
  for (auto& w : params.weights) w = rng.uniform_real();
  std::vector<std::pair<std::size_t, double>> entries;
  for (int i = 0; i < 40; ++i)
    entries.emplace_back(rng.uniform_index(4096), rng.uniform_real());
  auto x = features::FeatureVector::from_sparse(4096, entries);
  for (auto _ : state)
    benchmark::DoNotOptimize(classifier::forward(params, x));
}
BENCHMARK(bm_forward_sparse);

void bm_evaluate(benchmark::State& state) {
  Rng rng(13);
  std::vector<std::size_t> yt, yp;
  for (int i = 0; i < 10000; ++i) {
    yt.push_back(rng.uniform_index(2));
    yp.push_back(rng.uniform_index(2));
  }
  for (auto _ : state)
    benchmark::DoNotOptimize(metrics::evaluate(yt, yp, 1));
}
BENCHMARK(bm_evaluate);

}  // namespace

BENCHMARK_MAIN();
