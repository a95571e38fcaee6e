#include <CLI11.hpp>

#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "skewlens/augmentation.hpp"
#include "skewlens/classifier.hpp"
#include "skewlens/corpus_io.hpp"
#include "skewlens/divergence.hpp"
#include "skewlens/experiments.hpp"
#include "skewlens/features.hpp"
#include "skewlens/metrics.hpp"
#include "skewlens/rng.hpp"
#include "skewlens/types.hpp"

namespace fs = std::filesystem;
using namespace skewlens;

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::uint64_t master_seed = 0;
  bool has_seed = false;
};

experiments::ExperimentConfig resolve_config(const CommonArgs& args) {
  experiments::ExperimentConfig cfg;
  if (!args.config_path.empty())
    cfg = experiments::load_config(args.config_path);
  if (!args.out_dir.empty()) cfg.out_dir = args.out_dir;
  if (cfg.out_dir.empty()) cfg.out_dir = "run";
  if (args.has_seed) cfg.master_seed = args.master_seed;
  return cfg;
}

LabeledDataset load_set(const fs::path& articles, const fs::path& labels,
                        const std::string& name) {
  return corpus_io::load_slc_dataset(articles, labels, name);
}

StopwordSet load_stopwords_opt(const fs::path& path) {
  if (path.empty()) return {};
  return corpus_io::load_stopwords(path);
}

void print_similarity_table(const std::vector<experiments::SimilarityRow>& rows) {
  std::cout << std::left << std::setw(16) << "set_a" << std::setw(16) << "set_b"
            << std::right << std::setw(12) << "p-min" << std::setw(12)
            << "p-max" << std::setw(12) << "% similar" << "\n";
  for (const auto& row : rows) {
    std::cout << std::left << std::setw(16) << row.set_a << std::setw(16)
              << row.set_b << std::right << std::setw(12) << std::scientific
              << std::setprecision(2) << row.report.p_min << std::setw(12)
              << row.report.p_max << std::setw(12) << std::fixed
              << std::setprecision(0) << 100.0 * row.report.fraction_similar
              << "\n";
  }
}

int cmd_similarity(const CommonArgs& common,
                   const std::vector<std::string>& set_a,
                   const std::vector<std::string>& set_b,
                   std::size_t samples, std::size_t runs, double alpha) {
  auto cfg = resolve_config(common);
  cfg.similarity_samples = samples;
  cfg.similarity_runs = runs;
  cfg.alpha = alpha;
  StopwordSet sw = load_stopwords_opt(cfg.stopwords);

  LabeledDataset a = load_set(set_a[0], set_a[1], "set_a");
  LabeledDataset b = load_set(set_b[0], set_b[1], "set_b");

  auto report = divergence::corpus_similarity(a, b, sw, samples, runs, alpha,
                                              cfg.master_seed);
  std::vector<experiments::SimilarityRow> rows{{"set_a", "set_b", report}};
  print_similarity_table(rows);
  std::string csv = experiments::similarity_to_csv(rows);
  experiments::RunArtifacts artifacts;
  artifacts.config_snapshot = experiments::config_to_string(cfg);
  artifacts.csv_files = {{"similarity.csv", csv}};
  experiments::save_run(cfg.out_dir, artifacts);
  return 0;
}

// Shared data preparation: load train corpus, split 75/25, optional shifted
// eval set. The same split feeds every command so runs stay comparable.
struct PreparedData {
  LabeledDataset train;
  LabeledDataset in_domain_eval;
  LabeledDataset shifted_eval;
  bool has_shifted = false;
  features::Encoder encoder;
};

PreparedData prepare(const experiments::ExperimentConfig& cfg) {
  PreparedData data;
  if (cfg.encoder == "numeric" && cfg.train_articles.empty()) {
    auto fx = experiments::make_gaussian_fixture(2000, 1000, 0.10, 1.0,
                                                 cfg.master_seed);
    data.train = fx.train;
    data.in_domain_eval = fx.in_domain_eval;
    data.shifted_eval = fx.shifted_eval;
    data.has_shifted = true;
    data.encoder = fx.encoder;
    return data;
  }
  if (cfg.train_articles.empty() || cfg.train_labels.empty())
    throw ParseError("config: train_articles and train_labels are required");
  LabeledDataset full =
      load_set(cfg.train_articles, cfg.train_labels, "train");
  auto split = corpus_io::split_dataset(full, cfg.split_fraction,
                                        Rng::derive_seed(cfg.master_seed, 7));
  data.train = std::move(split.first);
  data.in_domain_eval = std::move(split.second);
  if (!cfg.eval_articles.empty() && !cfg.eval_labels.empty()) {
    data.shifted_eval = load_set(cfg.eval_articles, cfg.eval_labels, "eval");
    data.has_shifted = true;
  }
  data.encoder = experiments::build_encoder(cfg);
  return data;
}

void print_mean_scores(const std::string& tag,
                       const classifier::MeanScores& mean) {
  std::cout << tag << ": macro-f1 " << std::fixed << std::setprecision(4)
            << mean.macro_f1 << ", positive-f1 " << mean.positive_f1
            << ", minority recall " << mean.per_class.back().recall << "\n";
}

int cmd_train(const CommonArgs& common) {
  auto cfg = resolve_config(common);
  PreparedData data = prepare(cfg);

  augmentation::AugmentationConfig ac;
  ac.technique = augmentation::technique_from_string(cfg.technique);
  ac.deletion_prob = cfg.deletion_prob;
  ac.synonyms_per_sentence = cfg.synonyms_per_sentence;
  ac.oversample_ratio = cfg.oversample_ratio;
  ac.seed = Rng::derive_seed(cfg.master_seed, 11);
  augmentation::SynonymLexicon lexicon;
  if (!cfg.lexicon.empty()) lexicon = augmentation::load_lexicon(cfg.lexicon);
  StopwordSet sw = load_stopwords_opt(cfg.stopwords);
  LabeledDataset train_set =
      augmentation::augment_dataset(data.train, ac, lexicon, sw);

  classifier::TrainConfig tc;
  tc.learning_rate = cfg.learning_rate;
  tc.epochs = cfg.epochs;
  tc.batch_size = cfg.batch_size;
  tc.l2 = cfg.l2;
  auto repeated = classifier::run_repeated(train_set, data.in_domain_eval,
                                           data.encoder, tc, cfg.seeds);
  print_mean_scores("in-domain", repeated.mean);

  // final model from the first seed for persistence
  classifier::TrainConfig final_tc = tc;
  final_tc.seed = cfg.seeds.front();
  classifier::ModelParams model =
      classifier::train(train_set, data.encoder, final_tc);

  experiments::RunArtifacts artifacts;
  artifacts.config_snapshot = experiments::config_to_string(cfg);
  std::ostringstream per_seed_csv;
  per_seed_csv << "seed,macro_f1,positive_f1\n";
  per_seed_csv << std::fixed << std::setprecision(6);
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i)
    per_seed_csv << cfg.seeds[i] << ',' << repeated.per_seed[i].macro_f1 << ','
                 << repeated.per_seed[i].positive_f1 << "\n";
  artifacts.csv_files = {
      {"report.csv", metrics::report_to_csv(repeated.per_seed.front())},
      {"per_seed.csv", per_seed_csv.str()}};
  artifacts.model = &model;
  experiments::save_run(cfg.out_dir, artifacts);
  std::cout << metrics::format_report(repeated.per_seed.front());
  return 0;
}

int cmd_sweep(const CommonArgs& common) {
  auto cfg = resolve_config(common);
  PreparedData data = prepare(cfg);
  if (!data.has_shifted)
    throw ParseError("sweep requires an evaluation set (eval_articles/labels)");
  auto result = experiments::run_weight_sweep(
      cfg, data.train, data.in_domain_eval, data.shifted_eval, data.encoder);
  std::cout << std::left << std::setw(8) << "weight" << std::right
            << std::setw(14) << "in-domain f1" << std::setw(14) << "shifted f1"
            << std::setw(18) << "minority recall" << "\n";
  for (const auto& row : result.rows) {
    std::cout << std::left << std::setw(8) << row.minority_weight << std::right
              << std::fixed << std::setprecision(4) << std::setw(14)
              << row.in_domain.positive_f1 << std::setw(14)
              << row.shifted.positive_f1 << std::setw(18)
              << row.shifted.per_class.back().recall << "\n";
  }
  std::cout << "best weight: " << result.best_weight << "\n";
  experiments::RunArtifacts artifacts;
  artifacts.config_snapshot = experiments::config_to_string(cfg);
  artifacts.csv_files = {{"sweep.csv", experiments::sweep_to_csv(result)}};
  experiments::save_run(cfg.out_dir, artifacts);
  return 0;
}

int cmd_augment_compare(const CommonArgs& common) {
  auto cfg = resolve_config(common);
  PreparedData data = prepare(cfg);
  if (!data.has_shifted)
    throw ParseError(
        "augment-compare requires an evaluation set (eval_articles/labels)");
  augmentation::SynonymLexicon lexicon;
  if (!cfg.lexicon.empty()) lexicon = augmentation::load_lexicon(cfg.lexicon);
  StopwordSet sw = load_stopwords_opt(cfg.stopwords);
  auto rows = experiments::run_augmentation_comparison(
      cfg, data.train, data.in_domain_eval, data.shifted_eval, data.encoder,
      lexicon, sw);
  std::cout << std::left << std::setw(14) << "technique" << std::right
            << std::setw(14) << "in-domain f1" << std::setw(14) << "shifted f1"
            << "\n";
  for (const auto& row : rows)
    std::cout << std::left << std::setw(14)
              << augmentation::technique_name(row.technique) << std::right
              << std::fixed << std::setprecision(4) << std::setw(14)
              << row.in_domain_f1 << std::setw(14) << row.shifted_f1 << "\n";
  experiments::RunArtifacts artifacts;
  artifacts.config_snapshot = experiments::config_to_string(cfg);
  artifacts.csv_files = {
      {"augment_compare.csv", experiments::comparison_to_csv(rows)}};
  experiments::save_run(cfg.out_dir, artifacts);
  return 0;
}

int cmd_eval(const CommonArgs& common, const std::string& model_path,
             const std::vector<std::string>& set) {
  auto cfg = resolve_config(common);
  classifier::ModelParams model = classifier::load_model(model_path);
  LabeledDataset ds;
  if (!set.empty()) {
    ds = load_set(set[0], set[1], "eval");
  } else if (!cfg.eval_articles.empty()) {
    ds = load_set(cfg.eval_articles, cfg.eval_labels, "eval");
  } else {
    throw ParseError("eval: provide --set <dir> <labels> or eval_* in config");
  }
  auto encoder = experiments::build_encoder(cfg);
  auto report = classifier::evaluate_model(model, ds, encoder);
  std::cout << metrics::format_report(report);
  experiments::RunArtifacts artifacts;
  artifacts.config_snapshot = experiments::config_to_string(cfg);
  artifacts.csv_files = {{"report.csv", metrics::report_to_csv(report)}};
  experiments::save_run(cfg.out_dir, artifacts);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skewlens: imbalanced sentence classification under dataset shift"};
  app.require_subcommand(1);

  CommonArgs common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "flat key=value config file");
    sub->add_option("--out", common.out_dir, "run output directory");
    sub->add_option("--seed", common.master_seed, "master seed")
        ->each([&](const std::string&) { common.has_seed = true; });
  };

  auto* similarity = app.add_subcommand("similarity", "corpus similarity test");
  std::vector<std::string> set_a, set_b;
  std::size_t samples = 10000, runs = 10;
  double alpha = 0.05;
  similarity->add_option("--a", set_a, "articles dir and labels TSV of set A")
      ->expected(2);
  similarity->add_option("--b", set_b, "articles dir and labels TSV of set B")
      ->expected(2);
  similarity->add_option("--samples", samples, "tokens sampled per run");
  similarity->add_option("--runs", runs, "independent runs");
  similarity->add_option("--alpha", alpha, "similarity threshold");
  add_common(similarity);

  auto* train = app.add_subcommand("train", "train the weighted classifier");
  add_common(train);

  auto* sweep = app.add_subcommand("sweep", "minority-weight sweep");
  add_common(sweep);

  auto* augment =
      app.add_subcommand("augment-compare", "compare augmentation techniques");
  add_common(augment);

  auto* eval = app.add_subcommand("eval", "evaluate a saved model");
  std::string model_path;
  std::vector<std::string> eval_set;
  eval->add_option("--model", model_path, "model file")->required();
  eval->add_option("--set", eval_set, "articles dir and labels TSV")
      ->expected(2);
  add_common(eval);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (similarity->parsed()) {
      if (set_a.size() != 2 || set_b.size() != 2)
        throw ParseError("similarity: --a and --b each need <dir> <labels>");
      return cmd_similarity(common, set_a, set_b, samples, runs, alpha);
    }
    if (train->parsed()) return cmd_train(common);
    if (sweep->parsed()) return cmd_sweep(common);
    if (augment->parsed()) return cmd_augment_compare(common);
    if (eval->parsed()) return cmd_eval(common, model_path, eval_set);
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
