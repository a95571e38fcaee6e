#include "skewlens/divergence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "skewlens/corpus_io.hpp"
#include "skewlens/rng.hpp"

namespace skewlens::divergence {

FrequencyTable word_multiset(const LabeledDataset& ds,
                             const StopwordSet& stopwords) {
  FrequencyTable table;
  for (const auto& s : ds.sentences) {
    for (auto& tok : corpus_io::tokenize(s.text, stopwords)) {
      ++table.counts[tok];
      ++table.total_tokens;
    }
  }
  return table;
}

std::vector<std::pair<double, double>> sample_paired_frequencies(
    const FrequencyTable& a, const FrequencyTable& b, std::size_t n,
    std::uint64_t seed) {
  if (a.total_tokens == 0 || b.total_tokens == 0)
    throw InvalidArgument("sample_paired_frequencies: empty frequency table");
  if (n < 1) throw InvalidArgument("sample_paired_frequencies: n must be >= 1");

  // pooled multiset a ⊎ b, cumulative counts for sampling
  struct PoolEntry {
    std::size_t cumulative;
    std::size_t count_a;
    std::size_t count_b;
  };
  std::vector<PoolEntry> pool;
  pool.reserve(a.counts.size() + b.counts.size());
  std::size_t running = 0;
  auto ia = a.counts.begin();
  auto ib = b.counts.begin();
  while (ia != a.counts.end() || ib != b.counts.end()) {
    std::size_t ca = 0, cb = 0;
    if (ib == b.counts.end() ||
        (ia != a.counts.end() && ia->first < ib->first)) {
      ca = ia->second;
      ++ia;
    } else if (ia == a.counts.end() || ib->first < ia->first) {
      cb = ib->second;
      ++ib;
    } else {
      ca = ia->second;
      cb = ib->second;
      ++ia;
      ++ib;
    }
    running += ca + cb;
    pool.push_back({running, ca, cb});
  }

  const double scale_a = 1e6 / static_cast<double>(a.total_tokens);
  const double scale_b = 1e6 / static_cast<double>(b.total_tokens);
  Rng rng(seed);
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t target = rng.uniform_index(running) + 1;
    auto it = std::lower_bound(
        pool.begin(), pool.end(), target,
        [](const PoolEntry& e, std::size_t t) { return e.cumulative < t; });
    pairs.emplace_back(static_cast<double>(it->count_a) * scale_a,
                       static_cast<double>(it->count_b) * scale_b);
  }
  return pairs;
}

namespace {

double normal_sf_2sided(double z_abs) {
  // 2 * P(Z > |z|) for a standard normal
  return std::erfc(z_abs / std::sqrt(2.0));
}

// Exact two-sided p over the 2^n equiprobable sign assignments, via a count
// convolution on doubled ranks (mid-ranks double to integers).
double exact_p(const std::vector<double>& ranks, double w_plus) {
  std::size_t n = ranks.size();
  std::size_t total2 = 0;
  std::vector<std::size_t> r2(n);
  for (std::size_t i = 0; i < n; ++i) {
    r2[i] = static_cast<std::size_t>(std::llround(2.0 * ranks[i]));
    total2 += r2[i];
  }
  // counts[s] = number of subsets with doubled rank sum s
  std::vector<double> counts(total2 + 1, 0.0);
  counts[0] = 1.0;
  std::size_t reach = 0;
  for (std::size_t i = 0; i < n; ++i) {
    reach += r2[i];
    for (std::size_t s = reach + 1; s-- > r2[i];)
      counts[s] += counts[s - r2[i]];
  }
  const double denom = std::ldexp(1.0, static_cast<int>(n));  // 2^n
  std::size_t w2 = static_cast<std::size_t>(std::llround(2.0 * w_plus));
  double le = 0.0, ge = 0.0;
  for (std::size_t s = 0; s <= total2; ++s) {
    if (s <= w2) le += counts[s];
    if (s >= w2) ge += counts[s];
  }
  double p = 2.0 * std::min(le, ge) / denom;
  return std::min(p, 1.0);
}

}  // namespace

WilcoxonResult wilcoxon_signed_rank(
    const std::vector<std::pair<double, double>>& pairs, WilcoxonMode mode) {
  if (pairs.empty())
    throw InvalidArgument("wilcoxon_signed_rank: empty input");

  std::vector<double> diffs;
  diffs.reserve(pairs.size());
  for (const auto& [x, y] : pairs) {
    if (!std::isfinite(x) || !std::isfinite(y))
      throw InvalidArgument("wilcoxon_signed_rank: non-finite value");
    double d = x - y;
    if (d != 0.0) diffs.push_back(d);
  }

  WilcoxonResult res;
  res.n_effective = diffs.size();
  if (diffs.empty()) {
    res.degenerate = true;
    res.p_two_sided = 1.0;
    res.mode =
        (mode == WilcoxonMode::normal) ? WilcoxonMode::normal : WilcoxonMode::exact;
    return res;
  }

  std::size_t n = diffs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::fabs(diffs[a]) < std::fabs(diffs[b]);
  });

  // mid-ranks over tie groups of |d|
  std::vector<double> ranks(n);
  std::vector<std::size_t> tie_sizes;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    double v = std::fabs(diffs[order[i]]);
    while (j < n && std::fabs(diffs[order[j]]) == v) ++j;
    double mid = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = mid;
    if (j - i > 1) tie_sizes.push_back(j - i);
    i = j;
  }

  double w_plus = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    if (diffs[k] > 0.0) w_plus += ranks[k];
  double rank_total = static_cast<double>(n) * static_cast<double>(n + 1) / 2.0;
  res.w_plus = w_plus;
  res.w_minus = rank_total - w_plus;

  WilcoxonMode effective = mode;
  if (mode == WilcoxonMode::auto_select)
    effective = (n <= 25) ? WilcoxonMode::exact : WilcoxonMode::normal;
  res.mode = effective;

  if (effective == WilcoxonMode::exact) {
    std::vector<double> sorted_ranks(n);
    for (std::size_t k = 0; k < n; ++k) sorted_ranks[k] = ranks[k];
    res.p_two_sided = exact_p(sorted_ranks, w_plus);
  } else {
    double dn = static_cast<double>(n);
    double mu = dn * (dn + 1.0) / 4.0;
    double var = dn * (dn + 1.0) * (2.0 * dn + 1.0) / 24.0;
    for (std::size_t t : tie_sizes) {
      double td = static_cast<double>(t);
      var -= (td * td * td - td) / 48.0;
    }
    double sigma = std::sqrt(var);
    double delta = w_plus - mu;
    double z = 0.0;
    if (sigma > 0.0 && std::fabs(delta) > 0.5) {
      // continuity correction toward the mean
      z = (delta - (delta > 0.0 ? 0.5 : -0.5)) / sigma;
    }
    res.z = z;
    res.p_two_sided = std::min(1.0, normal_sf_2sided(std::fabs(z)));
    if (res.p_two_sided <= 0.0)
      res.p_two_sided = std::numeric_limits<double>::min();
  }
  return res;
}

SimilarityReport corpus_similarity(const LabeledDataset& a,
                                   const LabeledDataset& b,
                                   const StopwordSet& stopwords,
                                   std::size_t n_samples, std::size_t runs,
                                   double alpha, std::uint64_t seed) {
  if (runs < 1) throw InvalidArgument("corpus_similarity: runs must be >= 1");
  FrequencyTable ta = word_multiset(a, stopwords);
  FrequencyTable tb = word_multiset(b, stopwords);

  SimilarityReport rep;
  rep.runs = runs;
  rep.alpha = alpha;
  rep.n_samples = n_samples;
  rep.p_min = 2.0;
  rep.p_max = -1.0;
  std::size_t similar = 0;
  for (std::size_t r = 0; r < runs; ++r) {
    std::uint64_t run_seed = Rng::derive_seed(seed, r);
    auto pairs = sample_paired_frequencies(ta, tb, n_samples, run_seed);
    auto w = wilcoxon_signed_rank(pairs, WilcoxonMode::auto_select);
    rep.p_min = std::min(rep.p_min, w.p_two_sided);
    rep.p_max = std::max(rep.p_max, w.p_two_sided);
    if (w.p_two_sided >= alpha) ++similar;
  }
  rep.fraction_similar =
      static_cast<double>(similar) / static_cast<double>(runs);
  return rep;
}

}  // namespace skewlens::divergence
