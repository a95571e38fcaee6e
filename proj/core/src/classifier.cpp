#include "skewlens/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "skewlens/rng.hpp"

namespace skewlens::classifier {

ModelParams ModelParams::zeros(std::size_t num_classes, std::size_t dim) {
  ModelParams p;
  p.num_classes = num_classes;
  p.dim = dim;
  p.weights.assign(num_classes * dim, 0.0);
  p.bias.assign(num_classes, 0.0);
  return p;
}

ClassWeights ClassWeights::uniform(std::size_t num_classes) {
  return ClassWeights{std::vector<double>(num_classes, 1.0)};
}

ClassWeights ClassWeights::binary(double minority_weight) {
  return ClassWeights{{1.0, minority_weight}};
}

std::vector<double> forward(const ModelParams& params,
                            const features::FeatureVector& x) {
  if (x.dim() != params.dim)
    throw InvalidArgument("forward: feature dim " + std::to_string(x.dim()) +
                          " != model dim " + std::to_string(params.dim));
  std::vector<double> logits = params.bias;
  x.for_each([&](std::size_t i, double v) {
    for (std::size_t c = 0; c < params.num_classes; ++c)
      logits[c] += params.w(c, i) * v;
  });
  return logits;
}

double cross_entropy(const std::vector<double>& logits, std::size_t cls) {
  if (cls >= logits.size())
    throw InvalidArgument("cross_entropy: class out of range");
  double mx = -std::numeric_limits<double>::infinity();
  for (double l : logits) {
    if (!std::isfinite(l))
      throw InvalidArgument("cross_entropy: non-finite logit");
    mx = std::max(mx, l);
  }
  double sum = 0.0;
  for (double l : logits) sum += std::exp(l - mx);
  return -(logits[cls] - mx) + std::log(sum);
}

double weighted_loss(const std::vector<double>& logits, std::size_t cls,
                     const ClassWeights& cw) {
  return cw.w.at(cls) * cross_entropy(logits, cls);
}

namespace {

std::vector<double> softmax(const std::vector<double>& logits) {
  double mx = *std::max_element(logits.begin(), logits.end());
  std::vector<double> p(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    p[i] = std::exp(logits[i] - mx);
    sum += p[i];
  }
  for (double& v : p) v /= sum;
  return p;
}

}  // namespace

Gradient gradient(const ModelParams& params, const std::vector<Example>& batch,
                  const ClassWeights& cw, double l2) {
  if (batch.empty()) throw InvalidArgument("gradient: empty batch");
  Gradient g;
  g.d_weights.assign(params.num_classes * params.dim, 0.0);
  g.d_bias.assign(params.num_classes, 0.0);
  const double inv_n = 1.0 / static_cast<double>(batch.size());

  for (const auto& [x, cls] : batch) {
    auto p = softmax(forward(params, x));
    p[cls] -= 1.0;
    const double w = cw.w.at(cls);
    for (std::size_t c = 0; c < params.num_classes; ++c) {
      double coeff = w * p[c] * inv_n;
      g.d_bias[c] += coeff;
      x.for_each([&](std::size_t i, double v) {
        g.d_weights[c * params.dim + i] += coeff * v;
      });
    }
  }
  if (l2 > 0.0) {
    for (std::size_t i = 0; i < g.d_weights.size(); ++i)
      g.d_weights[i] += 2.0 * l2 * params.weights[i];
  }
  return g;
}

ModelParams train(const LabeledDataset& ds, const features::Encoder& encoder,
                  const TrainConfig& cfg) {
  if (ds.sentences.empty()) throw InvalidArgument("train: empty dataset");
  if (!ds.fully_labeled())
    throw InvalidArgument("train: dataset must be fully labeled");
  if (cfg.epochs < 1 || cfg.batch_size < 1 || !(cfg.learning_rate > 0.0))
    throw InvalidArgument("train: invalid config");

  std::vector<Example> examples;
  examples.reserve(ds.sentences.size());
  for (const auto& s : ds.sentences)
    examples.emplace_back(encoder(s), static_cast<std::size_t>(*s.label));

  const std::size_t num_classes = cfg.class_weights.w.size();
  const std::size_t dim = examples.front().first.dim();
  ModelParams params = ModelParams::zeros(num_classes, dim);

  std::vector<std::size_t> order(examples.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(cfg.seed);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i)
      std::swap(order[i - 1], order[rng.uniform_index(i)]);
    for (std::size_t start = 0; start < order.size();
         start += static_cast<std::size_t>(cfg.batch_size)) {
      std::size_t end = std::min(
          order.size(), start + static_cast<std::size_t>(cfg.batch_size));
      std::vector<Example> batch;
      batch.reserve(end - start);
      for (std::size_t k = start; k < end; ++k)
        batch.push_back(examples[order[k]]);
      Gradient g = gradient(params, batch, cfg.class_weights, cfg.l2);
      for (std::size_t i = 0; i < params.weights.size(); ++i)
        params.weights[i] -= cfg.learning_rate * g.d_weights[i];
      for (std::size_t c = 0; c < num_classes; ++c)
        params.bias[c] -= cfg.learning_rate * g.d_bias[c];
    }
  }
  return params;
}

std::size_t predict(const ModelParams& params,
                    const features::FeatureVector& x) {
  auto logits = forward(params, x);
  std::size_t best = 0;
  for (std::size_t c = 1; c < logits.size(); ++c)
    if (logits[c] > logits[best]) best = c;  // ties break low
  return best;
}

metrics::EvalReport evaluate_model(const ModelParams& params,
                                   const LabeledDataset& ds,
                                   const features::Encoder& encoder,
                                   std::size_t positive_class) {
  std::vector<std::size_t> y_true, y_pred;
  y_true.reserve(ds.sentences.size());
  for (const auto& s : ds.sentences) {
    if (!s.label) throw InvalidArgument("evaluate_model: unlabeled sentence");
    y_true.push_back(static_cast<std::size_t>(*s.label));
    y_pred.push_back(predict(params, encoder(s)));
  }
  return metrics::evaluate(y_true, y_pred, positive_class);
}

RepeatedEval run_repeated(const LabeledDataset& ds_train,
                          const LabeledDataset& ds_eval,
                          const features::Encoder& encoder,
                          const TrainConfig& cfg,
                          const std::vector<std::uint64_t>& seeds) {
  if (seeds.empty()) throw InvalidArgument("run_repeated: no seeds");
  RepeatedEval out;
  for (std::uint64_t seed : seeds) {
    TrainConfig c = cfg;
    c.seed = seed;
    ModelParams params = train(ds_train, encoder, c);
    out.per_seed.push_back(evaluate_model(params, ds_eval, encoder));
  }
  const double inv = 1.0 / static_cast<double>(seeds.size());
  const auto& first = out.per_seed.front();
  out.mean.per_class.resize(first.per_class.size());
  for (std::size_t c = 0; c < first.per_class.size(); ++c)
    out.mean.per_class[c].support = first.per_class[c].support;
  for (const auto& rep : out.per_seed) {
    for (std::size_t c = 0; c < rep.per_class.size(); ++c) {
      out.mean.per_class[c].precision += rep.per_class[c].precision * inv;
      out.mean.per_class[c].recall += rep.per_class[c].recall * inv;
      out.mean.per_class[c].f1 += rep.per_class[c].f1 * inv;
    }
    out.mean.macro_f1 += rep.macro_f1 * inv;
    out.mean.weighted_f1 += rep.weighted_f1 * inv;
    out.mean.positive_f1 += rep.positive_f1 * inv;
  }
  return out;
}

void save_model(const ModelParams& params, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write model: " + path.string());
  out << "skewlens-model v1 C=" << params.num_classes << " D=" << params.dim
      << "\n";
  out.precision(17);
  for (std::size_t c = 0; c < params.num_classes; ++c) {
    for (std::size_t d = 0; d < params.dim; ++d) {
      if (d) out << ' ';
      out << params.w(c, d);
    }
    out << '\n';
  }
  for (std::size_t c = 0; c < params.num_classes; ++c) {
    if (c) out << ' ';
    out << params.bias[c];
  }
  out << '\n';
}

ModelParams load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open model: " + path.string());
  std::string header;
  std::getline(in, header);
  std::size_t num_classes = 0, dim = 0;
  {
    std::stringstream ss(header);
    std::string magic, version, cfield, dfield;
    ss >> magic >> version >> cfield >> dfield;
    if (magic != "skewlens-model" || version != "v1" ||
        cfield.rfind("C=", 0) != 0 || dfield.rfind("D=", 0) != 0)
      throw ParseError("bad model header: " + header);
    num_classes = std::stoull(cfield.substr(2));
    dim = std::stoull(dfield.substr(2));
  }
  ModelParams params = ModelParams::zeros(num_classes, dim);
  for (std::size_t c = 0; c < num_classes; ++c)
    for (std::size_t d = 0; d < dim; ++d)
      if (!(in >> params.w(c, d)))
        throw ParseError("truncated model weights");
  for (std::size_t c = 0; c < num_classes; ++c)
    if (!(in >> params.bias[c])) throw ParseError("truncated model bias");
  return params;
}

}  // namespace skewlens::classifier
