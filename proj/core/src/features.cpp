#include "skewlens/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "skewlens/corpus_io.hpp"

namespace skewlens::features {

FeatureVector FeatureVector::zeros(std::size_t dim) {
  FeatureVector v;
  v.dim_ = dim;
  return v;
}

FeatureVector FeatureVector::from_dense(std::vector<double> values) {
  FeatureVector v;
  v.dim_ = values.size();
  v.dense_ = std::move(values);
  return v;
}

FeatureVector FeatureVector::from_sparse(
    std::size_t dim, std::vector<std::pair<std::size_t, double>> entries) {
  for (const auto& [i, val] : entries) {
    if (i >= dim) throw InvalidArgument("feature index out of range");
    if (!std::isfinite(val)) throw InvalidArgument("non-finite feature value");
  }
  std::sort(entries.begin(), entries.end());
  entries.erase(std::remove_if(entries.begin(), entries.end(),
                               [](const auto& e) { return e.second == 0.0; }),
                entries.end());
  FeatureVector v;
  v.dim_ = dim;
  if (dim > 0 && 2 * entries.size() >= dim) {
    v.dense_.assign(dim, 0.0);
    for (const auto& [i, val] : entries) v.dense_[i] = val;
  } else {
    v.sparse_ = std::move(entries);
  }
  return v;
}

double FeatureVector::get(std::size_t i) const {
  if (i >= dim_) throw InvalidArgument("feature index out of range");
  if (!dense_.empty()) return dense_[i];
  auto it = std::lower_bound(
      sparse_.begin(), sparse_.end(), i,
      [](const auto& e, std::size_t idx) { return e.first < idx; });
  return (it != sparse_.end() && it->first == i) ? it->second : 0.0;
}

std::size_t FeatureVector::nonzero_count() const {
  std::size_t n = 0;
  for_each([&](std::size_t, double) { ++n; });
  return n;
}

double FeatureVector::l2_norm() const {
  double ss = 0.0;
  for_each([&](std::size_t, double v) { ss += v * v; });
  return std::sqrt(ss);
}

void FeatureVector::l2_normalize() {
  double norm = l2_norm();
  if (norm == 0.0) return;
  for (auto& v : dense_) v /= norm;
  for (auto& [i, v] : sparse_) v /= norm;
}

FeatureVector concat(const FeatureVector& a, const FeatureVector& b) {
  std::vector<std::pair<std::size_t, double>> entries;
  entries.reserve(a.nonzero_count() + b.nonzero_count());
  a.for_each([&](std::size_t i, double v) { entries.emplace_back(i, v); });
  b.for_each(
      [&](std::size_t i, double v) { entries.emplace_back(a.dim() + i, v); });
  return FeatureVector::from_sparse(a.dim() + b.dim(), std::move(entries));
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

FeatureVector hash_ngrams(const std::vector<std::string>& tokens,
                          std::size_t dim, int n_max) {
  if (dim < 2 || (dim & (dim - 1)) != 0)
    throw InvalidArgument("hash_ngrams: dim must be a power of two >= 2");
  if (n_max < 1 || n_max > 3)
    throw InvalidArgument("hash_ngrams: n_max must be in 1..3");
  if (tokens.empty()) return FeatureVector::zeros(dim);

  std::map<std::size_t, double> acc;
  const std::size_t mask = dim - 1;
  for (std::size_t start = 0; start < tokens.size(); ++start) {
    std::string gram;
    for (int n = 1; n <= n_max; ++n) {
      std::size_t end = start + static_cast<std::size_t>(n) - 1;
      if (end >= tokens.size()) break;
      if (n > 1) gram.push_back(' ');
      gram += tokens[end];
      acc[fnv1a64(gram) & mask] += 1.0;
    }
  }
  std::vector<std::pair<std::size_t, double>> entries(acc.begin(), acc.end());
  auto v = FeatureVector::from_sparse(dim, std::move(entries));
  v.l2_normalize();
  return v;
}

EmbeddingStore load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open embeddings: " + path.string());
  EmbeddingStore store;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t t1 = line.find('\t');
    std::size_t t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos)
      throw ParseError("embeddings line " + std::to_string(lineno) +
                       ": expected 3 tab-separated fields");
    std::string id = line.substr(0, t1);
    int index = 0;
    try {
      index = std::stoi(line.substr(t1 + 1, t2 - t1 - 1));
    } catch (const std::exception&) {
      throw ParseError("embeddings line " + std::to_string(lineno) +
                       ": bad sentence index");
    }
    std::vector<double> vec;
    std::stringstream ss(line.substr(t2 + 1));
    std::string field;
    while (std::getline(ss, field, ',')) {
      double v = 0.0;
      try {
        v = std::stod(field);
      } catch (const std::exception&) {
        throw ParseError("embeddings line " + std::to_string(lineno) +
                         ": bad value '" + field + "'");
      }
      if (!std::isfinite(v))
        throw ParseError("embeddings line " + std::to_string(lineno) +
                         ": non-finite value");
      vec.push_back(v);
    }
    if (store.dim == 0)
      store.dim = vec.size();
    else if (vec.size() != store.dim)
      throw ParseError("embeddings line " + std::to_string(lineno) +
                       ": dimension " + std::to_string(vec.size()) +
                       " != " + std::to_string(store.dim));
    store.vectors[{id, index}] = std::move(vec);
  }
  return store;
}

Encoder make_hash_encoder(std::size_t dim, int n_max, StopwordSet stopwords) {
  return [dim, n_max, sw = std::move(stopwords)](const Sentence& s) {
    return hash_ngrams(corpus_io::tokenize(s.text, sw), dim, n_max);
  };
}

Encoder make_embedding_encoder(EmbeddingStore store) {
  auto shared = std::make_shared<EmbeddingStore>(std::move(store));
  return [shared](const Sentence& s) {
    auto it = shared->vectors.find({s.article_id, s.index});
    if (it == shared->vectors.end())
      throw InvalidArgument("no embedding for sentence " + s.article_id + ":" +
                            std::to_string(s.index));
    return FeatureVector::from_dense(it->second);
  };
}

Encoder make_numeric_encoder(std::size_t dim) {
  return [dim](const Sentence& s) {
    std::vector<double> vals;
    std::stringstream ss(s.text);
    double v;
    while (ss >> v) vals.push_back(v);
    vals.push_back(1.0);  // bias-like constant coordinate
    if (vals.size() != dim)
      throw InvalidArgument("numeric encoder: expected " +
                            std::to_string(dim - 1) + " values in '" + s.text +
                            "'");
    return FeatureVector::from_dense(std::move(vals));
  };
}

}  // namespace skewlens::features
