#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "skewlens/types.hpp"

namespace skewlens::features {

// Sparse/dense sentence representation. Stored dense when fill >= 50%.
class FeatureVector {
 public:
  FeatureVector() = default;

  static FeatureVector zeros(std::size_t dim);
  static FeatureVector from_dense(std::vector<double> values);
  static FeatureVector from_sparse(
      std::size_t dim, std::vector<std::pair<std::size_t, double>> entries);

  std::size_t dim() const { return dim_; }
  bool is_dense() const { return !dense_.empty() || dim_ == 0; }
  double get(std::size_t i) const;
  std::size_t nonzero_count() const;
  double l2_norm() const;
  void l2_normalize();

  // Visits (index, value) for every stored nonzero.
  template <typename F>
  void for_each(F&& f) const {
    if (!dense_.empty()) {
      for (std::size_t i = 0; i < dense_.size(); ++i)
        if (dense_[i] != 0.0) f(i, dense_[i]);
    } else {
      for (const auto& [i, v] : sparse_) f(i, v);
    }
  }

  const std::vector<double>& dense_values() const { return dense_; }
  const std::vector<std::pair<std::size_t, double>>& sparse_entries() const {
    return sparse_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<double> dense_;                            // when dense
  std::vector<std::pair<std::size_t, double>> sparse_;   // sorted by index
};

FeatureVector concat(const FeatureVector& a, const FeatureVector& b);

std::uint64_t fnv1a64(const std::string& s);

// Hashed n-gram vectorizer. dim must be a power of two >= 2; n_max in 1..3.
// Contiguous n-grams joined by a single space, FNV-1a-64 mod dim,
// count-accumulated, L2-normalized.
FeatureVector hash_ngrams(const std::vector<std::string>& tokens,
                          std::size_t dim, int n_max);

struct EmbeddingStore {
  std::size_t dim = 0;
  std::map<std::pair<std::string, int>, std::vector<double>> vectors;
};

// TSV rows: `article_id TAB sentence_index TAB v1,v2,...,vD`.
EmbeddingStore load_embeddings(const std::filesystem::path& path);

using Encoder = std::function<FeatureVector(const Sentence&)>;

Encoder make_hash_encoder(std::size_t dim, int n_max, StopwordSet stopwords);
Encoder make_embedding_encoder(EmbeddingStore store);
// Parses the sentence text as whitespace-separated reals, appending a
// constant 1.0 coordinate. Used for numeric fixtures.
Encoder make_numeric_encoder(std::size_t dim);

}  // namespace skewlens::features
