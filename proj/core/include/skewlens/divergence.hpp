#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "skewlens/types.hpp"

namespace skewlens::divergence {

struct FrequencyTable {
  std::map<std::string, std::size_t> counts;  // no zero-count entries
  std::size_t total_tokens = 0;
};

enum class WilcoxonMode { auto_select, exact, normal };

struct WilcoxonResult {
  double w_plus = 0.0;
  double w_minus = 0.0;
  std::size_t n_effective = 0;       // nonzero differences
  std::optional<double> z;           // normal approximation only
  double p_two_sided = 1.0;
  WilcoxonMode mode = WilcoxonMode::exact;
  bool degenerate = false;           // all differences were zero
};

struct SimilarityReport {
  double p_min = 1.0;
  double p_max = 1.0;
  std::size_t runs = 0;
  double fraction_similar = 0.0;  // share of runs with p >= alpha
  double alpha = 0.05;
  std::size_t n_samples = 0;
};

// Token counts over tokenize() of every sentence text.
FrequencyTable word_multiset(const LabeledDataset& ds,
                             const StopwordSet& stopwords);

// Draws n tokens with replacement from the pooled multiset of both tables
// and pairs up their per-million relative frequencies.
std::vector<std::pair<double, double>> sample_paired_frequencies(
    const FrequencyTable& a, const FrequencyTable& b, std::size_t n,
    std::uint64_t seed);

// Signed-rank test on paired values. Zero differences are dropped; ties get
// mid-ranks. auto_select uses the exact distribution when n_effective <= 25.
WilcoxonResult wilcoxon_signed_rank(
    const std::vector<std::pair<double, double>>& pairs,
    WilcoxonMode mode = WilcoxonMode::auto_select);

// Repeated sample-and-test cycles with seeds derived from the master seed.
SimilarityReport corpus_similarity(const LabeledDataset& a,
                                   const LabeledDataset& b,
                                   const StopwordSet& stopwords,
                                   std::size_t n_samples, std::size_t runs,
                                   double alpha, std::uint64_t seed);

}  // namespace skewlens::divergence
