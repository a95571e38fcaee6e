#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "skewlens/features.hpp"
#include "skewlens/metrics.hpp"
#include "skewlens/types.hpp"

namespace skewlens::classifier {

struct ModelParams {
  std::size_t num_classes = 0;
  std::size_t dim = 0;
  std::vector<double> weights;  // row-major, num_classes x dim
  std::vector<double> bias;     // length num_classes

  static ModelParams zeros(std::size_t num_classes, std::size_t dim);
  double& w(std::size_t c, std::size_t d) { return weights[c * dim + d]; }
  double w(std::size_t c, std::size_t d) const { return weights[c * dim + d]; }
};

struct ClassWeights {
  std::vector<double> w;  // positive, finite, length = num_classes

  static ClassWeights uniform(std::size_t num_classes);
  // Binary convenience: [1, minority_weight] with propaganda as class 1.
  static ClassWeights binary(double minority_weight);
};

struct TrainConfig {
  double learning_rate = 0.1;
  int epochs = 50;
  int batch_size = 32;
  std::uint64_t seed = 0;
  ClassWeights class_weights = ClassWeights::uniform(2);
  double l2 = 0.0;
};

std::vector<double> forward(const ModelParams& params,
                            const features::FeatureVector& x);

// -x[class] + log sum_j exp(x[j]), max-subtracted.
double cross_entropy(const std::vector<double>& logits, std::size_t cls);

double weighted_loss(const std::vector<double>& logits, std::size_t cls,
                     const ClassWeights& cw);

struct Gradient {
  std::vector<double> d_weights;  // row-major, num_classes x dim
  std::vector<double> d_bias;
};

using Example = std::pair<features::FeatureVector, std::size_t>;

// Mean over the batch of cw[class] * (softmax(logits) - onehot(class)),
// outer product with x, plus 2*l2*W.
Gradient gradient(const ModelParams& params, const std::vector<Example>& batch,
                  const ClassWeights& cw, double l2 = 0.0);

ModelParams train(const LabeledDataset& ds, const features::Encoder& encoder,
                  const TrainConfig& cfg);

std::size_t predict(const ModelParams& params,
                    const features::FeatureVector& x);

metrics::EvalReport evaluate_model(const ModelParams& params,
                                   const LabeledDataset& ds,
                                   const features::Encoder& encoder,
                                   std::size_t positive_class = 1);

struct MeanScores {
  std::vector<metrics::ClassScores> per_class;  // supports are from seed 0
  double macro_f1 = 0.0;
  double weighted_f1 = 0.0;
  double positive_f1 = 0.0;
};

struct RepeatedEval {
  MeanScores mean;
  std::vector<metrics::EvalReport> per_seed;
};

// Trains and evaluates once per seed, averaging all report scalars.
RepeatedEval run_repeated(const LabeledDataset& ds_train,
                          const LabeledDataset& ds_eval,
                          const features::Encoder& encoder,
                          const TrainConfig& cfg,
                          const std::vector<std::uint64_t>& seeds);

// Text model file; round-trips exactly (17 significant digits).
void save_model(const ModelParams& params, const std::filesystem::path& path);
ModelParams load_model(const std::filesystem::path& path);

}  // namespace skewlens::classifier
