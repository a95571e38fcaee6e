#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "skewlens/augmentation.hpp"
#include "skewlens/classifier.hpp"
#include "skewlens/divergence.hpp"
#include "skewlens/features.hpp"
#include "skewlens/metrics.hpp"
#include "skewlens/types.hpp"

namespace skewlens::experiments {

enum class SelectionMetric { positive_f1, macro_f1 };

struct ExperimentConfig {
  std::filesystem::path train_articles;
  std::filesystem::path train_labels;
  std::filesystem::path eval_articles;  // shifted evaluation set (optional)
  std::filesystem::path eval_labels;
  std::filesystem::path embeddings;
  std::filesystem::path lexicon;
  std::filesystem::path stopwords;
  std::filesystem::path out_dir;

  std::string encoder = "hash";  // hash | embedding | numeric
  std::size_t hash_dim = 4096;
  int ngram_max = 2;
  std::size_t numeric_dim = 3;

  double split_fraction = 0.75;
  std::vector<std::uint64_t> seeds = {1, 2, 3};
  std::uint64_t master_seed = 42;

  std::vector<double> weight_list = {1, 2, 3, 4, 5, 6, 8};
  SelectionMetric selection_metric = SelectionMetric::positive_f1;

  double learning_rate = 0.1;
  int epochs = 50;
  int batch_size = 32;
  double l2 = 0.0;

  std::string technique = "none";
  double deletion_prob = 0.1;
  int synonyms_per_sentence = 1;
  double oversample_ratio = 1.0;

  std::size_t similarity_samples = 10000;
  std::size_t similarity_runs = 10;
  double alpha = 0.05;
};

// Flat `key = value` file, `#` comments. Unknown keys are an error.
ExperimentConfig load_config(const std::filesystem::path& path);
std::string config_to_string(const ExperimentConfig& cfg);

features::Encoder build_encoder(const ExperimentConfig& cfg);

struct SweepRow {
  double minority_weight = 1.0;
  classifier::MeanScores in_domain;
  classifier::MeanScores shifted;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // weights strictly increasing
  double best_weight = 1.0;    // argmax of the selection metric on shifted
};

// Trains with class weights [1, w] for each listed w; evaluates on the
// held-out in-domain split and on the shifted evaluation set.
SweepResult run_weight_sweep(const ExperimentConfig& cfg,
                             const LabeledDataset& train,
                             const LabeledDataset& in_domain_eval,
                             const LabeledDataset& shifted_eval,
                             const features::Encoder& encoder);

struct ComparisonRow {
  augmentation::Technique technique;
  double in_domain_f1 = 0.0;
  double shifted_f1 = 0.0;
};

// Runs {none, synonym, delete, oversample} under identical splits and seeds.
std::vector<ComparisonRow> run_augmentation_comparison(
    const ExperimentConfig& cfg, const LabeledDataset& train,
    const LabeledDataset& in_domain_eval, const LabeledDataset& shifted_eval,
    const features::Encoder& encoder,
    const augmentation::SynonymLexicon& lexicon, const StopwordSet& stopwords);

struct SimilarityRow {
  std::string set_a;
  std::string set_b;
  divergence::SimilarityReport report;
};

// Self-similarity splits (50/50 and 25/75) of each set plus all cross pairs.
std::vector<SimilarityRow> run_similarity_report(
    const ExperimentConfig& cfg,
    const std::vector<std::pair<std::string, LabeledDataset>>& sets,
    const StopwordSet& stopwords);

std::string sweep_to_csv(const SweepResult& r);
std::string comparison_to_csv(const std::vector<ComparisonRow>& rows);
std::string similarity_to_csv(const std::vector<SimilarityRow>& rows);

struct RunArtifacts {
  std::string config_snapshot;
  std::vector<std::pair<std::string, std::string>> csv_files;  // name, content
  const classifier::ModelParams* model = nullptr;
};

// Persists a run directory: config snapshot, CSV tables, trained model.
void save_run(const std::filesystem::path& dir, const RunArtifacts& artifacts);

struct GaussianFixture {
  LabeledDataset train;
  LabeledDataset in_domain_eval;
  LabeledDataset shifted_eval;  // class-conditional means shifted
  features::Encoder encoder;
};

// Two 2-D Gaussian classes at the given minority prevalence, with the
// shifted set's class means displaced. Sentences carry "x y" texts.
GaussianFixture make_gaussian_fixture(std::size_t n_train, std::size_t n_eval,
                                      double minority_fraction, double shift,
                                      std::uint64_t seed);

}  // namespace skewlens::experiments
