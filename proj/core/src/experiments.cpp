#include "skewlens/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "skewlens/corpus_io.hpp"
#include "skewlens/rng.hpp"

namespace skewlens::experiments {

namespace fs = std::filesystem;

namespace {

std::string trimmed(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  std::size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string field;
  while (std::getline(ss, field, ',')) {
    field = trimmed(field);
    if (!field.empty()) out.push_back(field);
  }
  return out;
}

}  // namespace

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open config: " + path.string());
  ExperimentConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trimmed(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line " + std::to_string(lineno) +
                       ": expected `key = value`");
    std::string key = trimmed(line.substr(0, eq));
    std::string value = trimmed(line.substr(eq + 1));
    try {
      if (key == "train_articles") cfg.train_articles = value;
      else if (key == "train_labels") cfg.train_labels = value;
      else if (key == "eval_articles") cfg.eval_articles = value;
      else if (key == "eval_labels") cfg.eval_labels = value;
      else if (key == "embeddings") cfg.embeddings = value;
      else if (key == "lexicon") cfg.lexicon = value;
      else if (key == "stopwords") cfg.stopwords = value;
      else if (key == "out_dir") cfg.out_dir = value;
      else if (key == "encoder") cfg.encoder = value;
      else if (key == "hash_dim") cfg.hash_dim = std::stoull(value);
      else if (key == "ngram_max") cfg.ngram_max = std::stoi(value);
      else if (key == "numeric_dim") cfg.numeric_dim = std::stoull(value);
      else if (key == "split_fraction") cfg.split_fraction = std::stod(value);
      else if (key == "seeds") {
        cfg.seeds.clear();
        for (const auto& s : split_commas(value))
          cfg.seeds.push_back(std::stoull(s));
      } else if (key == "master_seed") cfg.master_seed = std::stoull(value);
      else if (key == "weight_list") {
        cfg.weight_list.clear();
        for (const auto& s : split_commas(value))
          cfg.weight_list.push_back(std::stod(s));
      } else if (key == "selection_metric") {
        if (value == "positive_f1") cfg.selection_metric = SelectionMetric::positive_f1;
        else if (value == "macro_f1") cfg.selection_metric = SelectionMetric::macro_f1;
        else throw ParseError("unknown selection_metric: " + value);
      } else if (key == "learning_rate") cfg.learning_rate = std::stod(value);
      else if (key == "epochs") cfg.epochs = std::stoi(value);
      else if (key == "batch_size") cfg.batch_size = std::stoi(value);
      else if (key == "l2") cfg.l2 = std::stod(value);
      else if (key == "technique") cfg.technique = value;
      else if (key == "deletion_prob") cfg.deletion_prob = std::stod(value);
      else if (key == "synonyms_per_sentence")
        cfg.synonyms_per_sentence = std::stoi(value);
      else if (key == "oversample_ratio") cfg.oversample_ratio = std::stod(value);
      else if (key == "similarity_samples")
        cfg.similarity_samples = std::stoull(value);
      else if (key == "similarity_runs") cfg.similarity_runs = std::stoull(value);
      else if (key == "alpha") cfg.alpha = std::stod(value);
      else
        throw ParseError("config line " + std::to_string(lineno) +
                         ": unknown key '" + key + "'");
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError("config line " + std::to_string(lineno) +
                       ": bad value for '" + key + "'");
    }
  }
  if (cfg.weight_list.empty())
    throw ParseError("config: weight_list must be non-empty");
  for (double w : cfg.weight_list)
    if (!(w > 0.0)) throw ParseError("config: weights must be positive");
  return cfg;
}

std::string config_to_string(const ExperimentConfig& cfg) {
  std::ostringstream out;
  auto emit_path = [&](const char* key, const fs::path& p) {
    if (!p.empty()) out << key << " = " << p.string() << "\n";
  };
  emit_path("train_articles", cfg.train_articles);
  emit_path("train_labels", cfg.train_labels);
  emit_path("eval_articles", cfg.eval_articles);
  emit_path("eval_labels", cfg.eval_labels);
  emit_path("embeddings", cfg.embeddings);
  emit_path("lexicon", cfg.lexicon);
  emit_path("stopwords", cfg.stopwords);
  emit_path("out_dir", cfg.out_dir);
  out << "encoder = " << cfg.encoder << "\n";
  out << "hash_dim = " << cfg.hash_dim << "\n";
  out << "ngram_max = " << cfg.ngram_max << "\n";
  out << "numeric_dim = " << cfg.numeric_dim << "\n";
  out << "split_fraction = " << cfg.split_fraction << "\n";
  out << "seeds = ";
  for (std::size_t i = 0; i < cfg.seeds.size(); ++i)
    out << (i ? "," : "") << cfg.seeds[i];
  out << "\n";
  out << "master_seed = " << cfg.master_seed << "\n";
  out << "weight_list = ";
  for (std::size_t i = 0; i < cfg.weight_list.size(); ++i)
    out << (i ? "," : "") << cfg.weight_list[i];
  out << "\n";
  out << "selection_metric = "
      << (cfg.selection_metric == SelectionMetric::positive_f1 ? "positive_f1"
                                                               : "macro_f1")
      << "\n";
  out << "learning_rate = " << cfg.learning_rate << "\n";
  out << "epochs = " << cfg.epochs << "\n";
  out << "batch_size = " << cfg.batch_size << "\n";
  out << "l2 = " << cfg.l2 << "\n";
  out << "technique = " << cfg.technique << "\n";
  out << "deletion_prob = " << cfg.deletion_prob << "\n";
  out << "synonyms_per_sentence = " << cfg.synonyms_per_sentence << "\n";
  out << "oversample_ratio = " << cfg.oversample_ratio << "\n";
  out << "similarity_samples = " << cfg.similarity_samples << "\n";
  out << "similarity_runs = " << cfg.similarity_runs << "\n";
  out << "alpha = " << cfg.alpha << "\n";
  return out.str();
}

features::Encoder build_encoder(const ExperimentConfig& cfg) {
  if (cfg.encoder == "hash") {
    StopwordSet sw;
    if (!cfg.stopwords.empty())
      sw = corpus_io::load_stopwords(cfg.stopwords);
    return features::make_hash_encoder(cfg.hash_dim, cfg.ngram_max,
                                       std::move(sw));
  }
  if (cfg.encoder == "embedding") {
    if (cfg.embeddings.empty())
      throw ParseError("embedding encoder requires `embeddings` path");
    return features::make_embedding_encoder(
        features::load_embeddings(cfg.embeddings));
  }
  if (cfg.encoder == "numeric")
    return features::make_numeric_encoder(cfg.numeric_dim);
  throw ParseError("unknown encoder: " + cfg.encoder);
}

namespace {

double select_score(const classifier::MeanScores& s, SelectionMetric metric) {
  return metric == SelectionMetric::positive_f1 ? s.positive_f1 : s.macro_f1;
}

classifier::TrainConfig base_train_config(const ExperimentConfig& cfg) {
  classifier::TrainConfig tc;
  tc.learning_rate = cfg.learning_rate;
  tc.epochs = cfg.epochs;
  tc.batch_size = cfg.batch_size;
  tc.l2 = cfg.l2;
  return tc;
}

}  // namespace

SweepResult run_weight_sweep(const ExperimentConfig& cfg,
                             const LabeledDataset& train,
                             const LabeledDataset& in_domain_eval,
                             const LabeledDataset& shifted_eval,
                             const features::Encoder& encoder) {
  std::vector<double> weights = cfg.weight_list;
  std::sort(weights.begin(), weights.end());
  weights.erase(std::unique(weights.begin(), weights.end()), weights.end());

  SweepResult result;
  double best_score = -1.0;
  for (double w : weights) {
    classifier::TrainConfig tc = base_train_config(cfg);
    tc.class_weights = classifier::ClassWeights::binary(w);
    SweepRow row;
    row.minority_weight = w;
    row.in_domain =
        classifier::run_repeated(train, in_domain_eval, encoder, tc, cfg.seeds)
            .mean;
    row.shifted =
        classifier::run_repeated(train, shifted_eval, encoder, tc, cfg.seeds)
            .mean;
    double score = select_score(row.shifted, cfg.selection_metric);
    if (score > best_score) {
      best_score = score;
      result.best_weight = w;
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

std::vector<ComparisonRow> run_augmentation_comparison(
    const ExperimentConfig& cfg, const LabeledDataset& train,
    const LabeledDataset& in_domain_eval, const LabeledDataset& shifted_eval,
    const features::Encoder& encoder,
    const augmentation::SynonymLexicon& lexicon, const StopwordSet& stopwords) {
  using augmentation::Technique;
  const Technique techniques[] = {Technique::none, Technique::synonym,
                                  Technique::del, Technique::oversample};
  std::vector<ComparisonRow> rows;
  for (Technique t : techniques) {
    augmentation::AugmentationConfig ac;
    ac.technique = t;
    ac.deletion_prob = cfg.deletion_prob;
    ac.synonyms_per_sentence = cfg.synonyms_per_sentence;
    ac.oversample_ratio = cfg.oversample_ratio;
    ac.seed = Rng::derive_seed(cfg.master_seed, static_cast<std::uint64_t>(t));
    LabeledDataset augmented =
        augmentation::augment_dataset(train, ac, lexicon, stopwords);

    classifier::TrainConfig tc = base_train_config(cfg);
    ComparisonRow row;
    row.technique = t;
    row.in_domain_f1 =
        classifier::run_repeated(augmented, in_domain_eval, encoder, tc,
                                 cfg.seeds)
            .mean.positive_f1;
    row.shifted_f1 =
        classifier::run_repeated(augmented, shifted_eval, encoder, tc,
                                 cfg.seeds)
            .mean.positive_f1;
    rows.push_back(row);
  }
  return rows;
}

std::vector<SimilarityRow> run_similarity_report(
    const ExperimentConfig& cfg,
    const std::vector<std::pair<std::string, LabeledDataset>>& sets,
    const StopwordSet& stopwords) {
  if (sets.size() < 2)
    throw InvalidArgument("run_similarity_report: need >= 2 datasets");
  std::vector<SimilarityRow> rows;
  std::uint64_t stream = 0;
  auto add = [&](const std::string& na, const LabeledDataset& a,
                 const std::string& nb, const LabeledDataset& b) {
    SimilarityRow row;
    row.set_a = na;
    row.set_b = nb;
    row.report = divergence::corpus_similarity(
        a, b, stopwords, cfg.similarity_samples, cfg.similarity_runs,
        cfg.alpha, Rng::derive_seed(cfg.master_seed, stream++));
    rows.push_back(std::move(row));
  };
  // self-similarity splits per set
  for (const auto& [name, ds] : sets) {
    auto half = corpus_io::split_dataset(ds, 0.5,
                                         Rng::derive_seed(cfg.master_seed, 101));
    add("50% " + name, half.first, "50% " + name, half.second);
    auto quarter = corpus_io::split_dataset(
        ds, 0.25, Rng::derive_seed(cfg.master_seed, 102));
    add("25% " + name, quarter.first, "75% " + name, quarter.second);
  }
  // cross pairs
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j)
      add(sets[i].first, sets[i].second, sets[j].first, sets[j].second);
  return rows;
}

std::string sweep_to_csv(const SweepResult& r) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(6);
  out << "weight,set,precision,recall,f1\n";
  for (const auto& row : r.rows) {
    const auto& id = row.in_domain.per_class.back();
    out << row.minority_weight << ",in_domain," << id.precision << ','
        << id.recall << ',' << id.f1 << "\n";
    const auto& sh = row.shifted.per_class.back();
    out << row.minority_weight << ",shifted," << sh.precision << ','
        << sh.recall << ',' << sh.f1 << "\n";
  }
  return out.str();
}

std::string comparison_to_csv(const std::vector<ComparisonRow>& rows) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(6);
  out << "technique,in_domain_f1,shifted_f1\n";
  for (const auto& row : rows)
    out << augmentation::technique_name(row.technique) << ','
        << row.in_domain_f1 << ',' << row.shifted_f1 << "\n";
  return out.str();
}

std::string similarity_to_csv(const std::vector<SimilarityRow>& rows) {
  std::ostringstream out;
  out << "set_a,set_b,p_min,p_max,pct_similar\n";
  for (const auto& row : rows) {
    out << row.set_a << ',' << row.set_b << ','
        << std::scientific << std::setprecision(2) << row.report.p_min << ','
        << row.report.p_max << ',' << std::fixed << std::setprecision(0)
        << 100.0 * row.report.fraction_similar << "\n";
  }
  return out.str();
}

void save_run(const fs::path& dir, const RunArtifacts& artifacts) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw ParseError("cannot create run directory " + dir.string() + ": " +
                     ec.message());
  auto write = [&](const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw ParseError("cannot write " + p.string());
    out << content;
  };
  write(dir / "config.snapshot", artifacts.config_snapshot);
  for (const auto& [name, content] : artifacts.csv_files)
    write(dir / name, content);
  if (artifacts.model) classifier::save_model(*artifacts.model, dir / "model.txt");
}

GaussianFixture make_gaussian_fixture(std::size_t n_train, std::size_t n_eval,
                                      double minority_fraction, double shift,
                                      std::uint64_t seed) {
  Rng rng(seed);
  auto gauss = [&rng]() {
    double u1 = 1.0 - rng.uniform_real();
    double u2 = rng.uniform_real();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  };
  auto make_set = [&](std::size_t n, double dx, double dy, const char* name,
                      const std::string& prefix) {
    LabeledDataset ds;
    ds.name = name;
    for (std::size_t i = 0; i < n; ++i) {
      bool minority = rng.uniform_real() < minority_fraction;
      double mx = minority ? 2.0 : 0.0;
      double my = minority ? 2.0 : 0.0;
      double x = mx + dx + gauss();
      double y = my + dy + gauss();
      std::ostringstream text;
      text << std::setprecision(17) << x << ' ' << y;
      Sentence s;
      s.article_id = prefix;
      s.index = static_cast<int>(i + 1);
      s.text = text.str();
      s.label = minority ? Label::propaganda : Label::non_propaganda;
      ds.sentences.push_back(std::move(s));
    }
    return ds;
  };
  GaussianFixture fx;
  fx.train = make_set(n_train, 0.0, 0.0, "train", "g-train");
  fx.in_domain_eval = make_set(n_eval, 0.0, 0.0, "in-domain", "g-indomain");
  // class-conditional means displaced toward the majority side
  fx.shifted_eval = make_set(n_eval, -shift, -shift, "shifted", "g-shifted");
  fx.encoder = features::make_numeric_encoder(3);
  return fx;
}

}  // namespace skewlens::experiments
