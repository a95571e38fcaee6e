// End-to-end acceptance suite. Each check prints one PASS/FAIL line;
// the process exits nonzero if any check fails.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "skewlens/augmentation.hpp"
#include "skewlens/classifier.hpp"
#include "skewlens/corpus_io.hpp"
#include "skewlens/divergence.hpp"
#include "skewlens/experiments.hpp"
#include "skewlens/features.hpp"
#include "skewlens/metrics.hpp"
#include "skewlens/rng.hpp"

using namespace skewlens;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool ok, double seconds) {
  std::ostringstream line;
  line << (ok ? "PASS" : "FAIL") << "  [" << id << "] " << name << "  ("
       << std::fixed << std::setprecision(1) << seconds << "s)";
  std::cout << line.str() << std::endl;
  if (!ok) ++g_failures;
}

void run_check(int id, const std::string& name,
               const std::function<bool()>& fn) {
  auto start = Clock::now();
  bool ok = false;
  try {
    ok = fn();
  } catch (const std::exception& e) {
    std::cout << "  exception: " << e.what() << "\n";
  }
  double secs = std::chrono::duration<double>(Clock::now() - start).count();
  report(id, name, ok, secs);
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return "<missing:" + p.string() + ">";
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary);
  out << content;
}

// --- check 1: exact Wilcoxon vs brute-force enumeration -------------------

bool check_wilcoxon_oracle() {
  Rng rng(1001);
  bool ok = true;
  for (int trial = 0; trial < 200 && ok; ++trial) {
    std::size_t n = 1 + rng.uniform_index(12);
    std::vector<std::pair<double, double>> pairs;
    for (std::size_t i = 0; i < n; ++i)
      pairs.emplace_back(static_cast<double>(rng.uniform_index(6)),
                         static_cast<double>(rng.uniform_index(6)));
    auto r = divergence::wilcoxon_signed_rank(pairs,
                                              divergence::WilcoxonMode::exact);
    double oracle = oracles::wilcoxon_exact_p_bruteforce(pairs);
    if (std::fabs(r.p_two_sided - oracle) > 1e-12) {
      std::cout << "  mismatch at trial " << trial << ": impl "
                << r.p_two_sided << " oracle " << oracle << "\n";
      ok = false;
    }
  }
  return ok;
}

// --- check 2: normal approximation quality --------------------------------

bool check_wilcoxon_approx() {
  Rng rng(1002);
  bool ok = true;
  for (int trial = 0; trial < 100 && ok; ++trial) {
    std::size_t n = 20 + rng.uniform_index(6);
    std::vector<std::pair<double, double>> pairs;
    for (std::size_t i = 0; i < n; ++i)
      pairs.emplace_back(rng.uniform_real(), rng.uniform_real());
    auto exact = divergence::wilcoxon_signed_rank(
        pairs, divergence::WilcoxonMode::exact);
    auto normal = divergence::wilcoxon_signed_rank(
        pairs, divergence::WilcoxonMode::normal);
    if (std::fabs(normal.p_two_sided - exact.p_two_sided) >= 0.01) {
      std::cout << "  n=" << n << " exact " << exact.p_two_sided << " normal "
                << normal.p_two_sided << "\n";
      ok = false;
    }
  }
  return ok;
}

// --- check 3: similarity protocol, self vs cross --------------------------

LabeledDataset word_corpus(const std::string& prefix, std::size_t sentences,
                           std::size_t vocab, bool zipf, std::uint64_t seed) {
  // prefix-specific vocabulary; zipf gives a peaked distribution, flat otherwise
  Rng rng(seed);
  LabeledDataset ds;
  ds.name = prefix;
  for (std::size_t i = 0; i < sentences; ++i) {
    std::ostringstream text;
    for (std::size_t t = 0; t < 12; ++t) {
      std::size_t word;
      if (zipf) {
        double u = rng.uniform_real();
        word = static_cast<std::size_t>(
                   std::pow(static_cast<double>(vocab), u)) -
               1;
      } else {
        word = rng.uniform_index(vocab);
      }
      text << (t ? " " : "") << prefix << word;
    }
    ds.sentences.push_back({prefix, static_cast<int>(i + 1), text.str(),
                            Label::non_propaganda});
  }
  return ds;
}

bool check_similarity_protocol() {
  // 30,000 tokens (2,500 sentences x 12), vocabulary large relative to the
  // 10,000-token sample so repeated draws of one word stay rare
  auto corpus = word_corpus("w", 2500, 30000, false, 32);
  auto [half_a, half_b] = corpus_io::split_dataset(corpus, 0.5, 17);
  auto self_rep =
      divergence::corpus_similarity(half_a, half_b, {}, 10000, 10, 0.05, 5);
  bool self_ok = self_rep.fraction_similar >= 0.9;
  if (!self_ok)
    std::cout << "  self-split fraction_similar " << self_rep.fraction_similar
              << " (p range " << self_rep.p_min << " .. " << self_rep.p_max
              << ")\n";

  // disjoint topic vocabularies with different sizes and frequency shapes
  auto topic_a = word_corpus("cats", 1400, 300, true, 41);
  auto topic_b = word_corpus("dogs", 700, 5000, false, 43);
  auto cross_rep =
      divergence::corpus_similarity(topic_a, topic_b, {}, 10000, 10, 0.05, 7);
  bool cross_ok =
      cross_rep.fraction_similar == 0.0 && cross_rep.p_max < 1e-3;
  if (!cross_ok)
    std::cout << "  disjoint pair fraction " << cross_rep.fraction_similar
              << " p_max " << cross_rep.p_max << "\n";
  return self_ok && cross_ok;
}

// --- check 4: loss formulas ------------------------------------------------

bool check_loss_formulas() {
  using namespace skewlens::classifier;
  bool ok = true;
  Rng rng(1004);
  auto unit = ClassWeights::uniform(2);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> logits{rng.uniform_real() * 10 - 5,
                               rng.uniform_real() * 10 - 5};
    std::size_t cls = rng.uniform_index(2);
    if (std::fabs(weighted_loss(logits, cls, unit) -
                  cross_entropy(logits, cls)) > 1e-12)
      ok = false;
  }
  ok = ok && std::fabs(cross_entropy({0, 0}, 0) - std::log(2.0)) < 1e-12;
  ClassWeights w4{{4.0, 1.0}};
  ok = ok &&
       std::fabs(weighted_loss({0, 0}, 0, w4) - 4.0 * std::log(2.0)) < 1e-12;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> logits{rng.uniform_real() * 6 - 3,
                               rng.uniform_real() * 6 - 3,
                               rng.uniform_real() * 6 - 3};
    double base = cross_entropy(logits, 0);
    for (double& l : logits) l += 123.456;
    if (std::fabs(cross_entropy(logits, 0) - base) > 1e-9) ok = false;
  }
  double huge = cross_entropy({1000.0, 0.0}, 0);
  ok = ok && std::isfinite(huge) && huge < 1e-9;
  double huge2 = cross_entropy({0.0, 1000.0}, 0);
  ok = ok && std::isfinite(huge2) && std::fabs(huge2 - 1000.0) < 1e-6;
  return ok;
}

// --- check 5: analytic gradient vs finite differences ----------------------

bool check_gradient() {
  using namespace skewlens::classifier;
  Rng rng(1005);
  bool ok = true;
  int draws = 0;
  for (std::size_t c : {2u, 3u}) {
    for (std::size_t d : {4u, 16u}) {
      for (int trial = 0; trial < 30; ++trial, ++draws) {
        ModelParams p = ModelParams::zeros(c, d);
        for (auto& w : p.weights) w = rng.uniform_real() * 2 - 1;
        for (auto& b : p.bias) b = rng.uniform_real() * 2 - 1;
        std::vector<Example> batch;
        for (int i = 0; i < 2; ++i) {
          std::vector<double> vals(d);
          for (auto& v : vals) v = rng.uniform_real() * 2 - 1;
          batch.emplace_back(features::FeatureVector::from_dense(vals),
                             rng.uniform_index(c));
        }
        ClassWeights cw{{}};
        for (std::size_t k = 0; k < c; ++k)
          cw.w.push_back(0.25 + rng.uniform_real() * 8.0);
        auto analytic = gradient(p, batch, cw, 0.0);
        auto numeric =
            oracles::finite_difference_gradient(p, batch, cw, 0.0, 1e-5);
        for (std::size_t i = 0; i < analytic.d_weights.size(); ++i) {
          double denom = std::max(1.0, std::fabs(numeric.d_weights[i]));
          if (std::fabs(analytic.d_weights[i] - numeric.d_weights[i]) / denom >=
              1e-5)
            ok = false;
        }
        for (std::size_t i = 0; i < analytic.d_bias.size(); ++i) {
          double denom = std::max(1.0, std::fabs(numeric.d_bias[i]));
          if (std::fabs(analytic.d_bias[i] - numeric.d_bias[i]) / denom >= 1e-5)
            ok = false;
        }
      }
    }
  }
  return ok && draws >= 100;
}

// --- check 6: weight sweep direction on the shifted fixture ----------------

bool check_weight_sweep_direction() {
  auto fx = experiments::make_gaussian_fixture(2000, 1000, 0.10, 1.0, 606);
  experiments::ExperimentConfig cfg;
  cfg.epochs = 30;
  cfg.learning_rate = 0.5;
  cfg.batch_size = 32;
  cfg.seeds = {1, 2, 3, 4, 5};
  cfg.weight_list = {1.0, 8.0};
  auto sweep = experiments::run_weight_sweep(cfg, fx.train, fx.in_domain_eval,
                                             fx.shifted_eval, fx.encoder);
  const auto& w1 = sweep.rows[0];
  const auto& w8 = sweep.rows[1];
  double recall1 = w1.shifted.per_class.back().recall;
  double recall8 = w8.shifted.per_class.back().recall;
  double prec1 = w1.in_domain.per_class.back().precision;
  double prec8 = w8.in_domain.per_class.back().precision;
  bool recall_up = recall8 > recall1;
  bool precision_not_up = prec8 <= prec1 + 0.05;  // one-sided noise margin
  std::cout << "  shifted minority recall: w1 " << recall1 << " -> w8 "
            << recall8 << "; in-domain minority precision: w1 " << prec1
            << " -> w8 " << prec8 << "\n";
  return recall_up && precision_not_up;
}

// --- check 7: oversampling exactness ---------------------------------------

bool check_oversampling() {
  Rng rng(1007);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t minority = 1 + rng.uniform_index(40);
    std::size_t majority = minority + 1 + rng.uniform_index(100);
    LabeledDataset ds;
    int idx = 1;
    for (std::size_t i = 0; i < minority; ++i)
      ds.sentences.push_back({"m", idx++, "min " + std::to_string(i),
                              Label::propaganda});
    for (std::size_t i = 0; i < majority; ++i)
      ds.sentences.push_back({"M", idx++, "maj " + std::to_string(i),
                              Label::non_propaganda});
    auto out = augmentation::oversample(ds, 1.0, rng.next_u64());
    auto counts = out.class_counts();
    if (counts.propaganda != counts.non_propaganda) return false;
    for (std::size_t i = 0; i < ds.sentences.size(); ++i)
      if (out.sentences[i].text != ds.sentences[i].text) return false;
  }
  return true;
}

// --- check 8: augmentation safety -------------------------------------------

std::size_t word_count(const std::string& text) {
  std::stringstream ss(text);
  std::string tok;
  std::size_t n = 0;
  while (ss >> tok) ++n;
  return n;
}

bool check_augmentation_safety() {
  Rng rng(1008);
  augmentation::SynonymLexicon lexicon;
  const std::vector<std::string> vocab = {"apple", "river", "stone", "cloud",
                                          "north", "paper", "glass", "field"};
  for (const auto& w : vocab) lexicon.entries[w] = {w + "x", w + "y"};

  const int n_repl = 2;
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t len = 1 + rng.uniform_index(12);
    std::ostringstream text;
    for (std::size_t t = 0; t < len; ++t)
      text << (t ? " " : "") << vocab[rng.uniform_index(vocab.size())];
    Sentence s{"a", 1, text.str(),
               rng.uniform_index(2) ? Label::propaganda
                                    : Label::non_propaganda};

    auto repl = augmentation::synonym_replace(s, lexicon, n_repl, {},
                                              rng.next_u64());
    if (repl.label != s.label) return false;
    if (word_count(repl.text) != len) return false;
    std::stringstream in1(s.text), in2(repl.text);
    std::string w1, w2;
    int edits = 0;
    while (in1 >> w1 && in2 >> w2)
      if (w1 != w2) ++edits;
    if (edits > n_repl) return false;

    auto del = augmentation::random_delete(s, 0.3, rng.next_u64());
    if (del.label != s.label) return false;
    if (word_count(del.text) < 1) return false;
  }

  // survival mean over 10,000 trials on a fixed 10-token sentence
  Sentence ten{"a", 1, "a b c d e f g h i j", Label::propaganda};
  double p = 0.3;
  double total = 0.0;
  for (int trial = 0; trial < 10000; ++trial)
    total += static_cast<double>(
        word_count(augmentation::random_delete(ten, p, trial).text));
  double mean_frac = total / 10000.0 / 10.0;
  if (std::fabs(mean_frac - (1.0 - p)) > 0.02 * 1.0) {
    std::cout << "  survival fraction " << mean_frac << " expected "
              << (1.0 - p) << "\n";
    return false;
  }
  return true;
}

// --- check 9: metrics oracle ------------------------------------------------

bool check_metrics() {
  auto hand = metrics::evaluate({1, 1, 0, 0}, {1, 0, 0, 0}, 1);
  bool ok = hand.per_class[1].precision == 1.0 &&
            hand.per_class[1].recall == 0.5 &&
            std::fabs(hand.per_class[1].f1 - 2.0 / 3.0) < 1e-12 &&
            std::fabs(hand.per_class[0].f1 - 0.8) < 1e-12 &&
            std::fabs(hand.macro_f1 - (2.0 / 3.0 + 0.8) / 2.0) < 1e-12;

  Rng rng(1009);
  for (int trial = 0; trial < 100 && ok; ++trial) {
    std::size_t n = 4 + rng.uniform_index(50);
    std::vector<std::size_t> yt, yp;
    for (std::size_t i = 0; i < n; ++i) {
      yt.push_back(rng.uniform_index(2));
      yp.push_back(rng.uniform_index(2));
    }
    auto r = metrics::evaluate(yt, yp, 1);
    auto oracle = oracles::metrics_counting_oracle(yt, yp, r.per_class.size());
    for (std::size_t k = 0; k < oracle.size(); ++k) {
      if (std::fabs(r.per_class[k].precision - oracle[k].precision) > 1e-12 ||
          std::fabs(r.per_class[k].recall - oracle[k].recall) > 1e-12 ||
          std::fabs(r.per_class[k].f1 - oracle[k].f1) > 1e-12)
        ok = false;
    }
  }
  std::string golden = read_file(fs::path(SKEWLENS_GOLDEN_DIR) /
                                 "report_4example.txt");
  if (metrics::format_report(hand) != golden) {
    std::cout << "  report rendering differs from golden file\n";
    ok = false;
  }
  return ok;
}

// --- check 10: CLI determinism ----------------------------------------------

int run_cli(const std::string& args) {
  std::string cmd = std::string(SKEWLENS_CLI) + " " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

bool same_file(const fs::path& a, const fs::path& b) {
  std::string ca = read_file(a), cb = read_file(b);
  if (ca != cb)
    std::cout << "  differ: " << a << " vs " << b << "\n";
  return ca == cb;
}

bool check_cli_determinism() {
  fs::path work = fs::temp_directory_path() / "skewlens_accept_cli";
  fs::remove_all(work);
  fs::create_directories(work);
  fs::path data = fs::path(SKEWLENS_DATA_DIR);
  fs::path mini = data / "mini_corpus";

  // hash-encoder config over the bundled corpus
  std::ostringstream corpus_cfg;
  corpus_cfg << "train_articles = " << mini.string() << "\n"
             << "train_labels = " << (mini / "labels.tsv").string() << "\n"
             << "eval_articles = " << mini.string() << "\n"
             << "eval_labels = " << (mini / "labels.tsv").string() << "\n"
             << "stopwords = " << (data / "stopwords.txt").string() << "\n"
             << "lexicon = " << (data / "synonyms.tsv").string() << "\n"
             << "encoder = hash\nhash_dim = 256\nngram_max = 2\n"
             << "epochs = 8\nlearning_rate = 0.5\nseeds = 1,2\n"
             << "master_seed = 5\nweight_list = 1,4\n";
  write_file(work / "corpus.conf", corpus_cfg.str());

  // numeric-encoder config over the generated fixture
  write_file(work / "numeric.conf",
             "encoder = numeric\nnumeric_dim = 3\nepochs = 8\n"
             "learning_rate = 0.5\nseeds = 1,2\nmaster_seed = 5\n"
             "weight_list = 1,4\n");

  bool ok = true;
  auto twice = [&](const std::string& tag, const std::string& args,
                   const std::vector<std::string>& csvs) {
    fs::path o1 = work / (tag + "_1");
    fs::path o2 = work / (tag + "_2");
    if (run_cli(args + " --out " + o1.string()) != 0 ||
        run_cli(args + " --out " + o2.string()) != 0) {
      std::cout << "  " << tag << ": CLI run failed\n";
      ok = false;
      return;
    }
    for (const auto& csv : csvs)
      if (!same_file(o1 / csv, o2 / csv)) ok = false;
  };

  std::string ccfg = " --config " + (work / "corpus.conf").string();
  std::string ncfg = " --config " + (work / "numeric.conf").string();
  twice("similarity",
        "similarity --a " + mini.string() + " " +
            (mini / "labels.tsv").string() + " --b " + mini.string() + " " +
            (mini / "labels.tsv").string() + " --samples 800 --runs 4 --seed 9",
        {"similarity.csv"});
  twice("train", "train" + ccfg, {"report.csv", "per_seed.csv"});
  twice("sweep", "sweep" + ncfg, {"sweep.csv"});
  twice("augment", "augment-compare" + ccfg, {"augment_compare.csv"});
  // eval uses the model written by the first train run
  fs::path model = work / "train_1" / "model.txt";
  twice("eval",
        "eval --model " + model.string() + ccfg,
        {"report.csv"});
  return ok;
}

// --- check 11: end-to-end pipeline on the bundled corpus --------------------

bool check_end_to_end() {
  fs::path mini = fs::path(SKEWLENS_DATA_DIR) / "mini_corpus";
  auto ds = corpus_io::load_slc_dataset(mini, mini / "labels.tsv", "mini");
  if (ds.sentences.size() < 40) return false;
  auto spans = corpus_io::load_flc_annotations(mini / "spans.tsv");
  if (spans.size() < 5) return false;
  auto resolved = corpus_io::resolve_overlapping_spans(spans, 3);
  auto offsets = corpus_io::compute_article_offsets(mini);
  auto fragment_ds = corpus_io::filter_fragment_sentences(ds, resolved, offsets);
  if (fragment_ds.sentences.empty()) return false;

  auto [train_set, eval_set] = corpus_io::split_dataset(ds, 0.75, 11);

  augmentation::AugmentationConfig ac;
  ac.technique = augmentation::Technique::oversample;
  ac.seed = 13;
  auto augmented = augmentation::augment_dataset(train_set, ac, {});

  auto sw = corpus_io::load_stopwords(fs::path(SKEWLENS_DATA_DIR) /
                                      "stopwords.txt");
  auto encoder = features::make_hash_encoder(512, 2, sw);
  classifier::TrainConfig tc;
  tc.epochs = 12;
  tc.learning_rate = 0.5;
  auto rep = classifier::run_repeated(augmented, eval_set, encoder, tc,
                                      {1, 2, 3});
  if (rep.per_seed.size() != 3) return false;
  std::string report = metrics::format_report(rep.per_seed.front());
  return !report.empty() && rep.mean.macro_f1 >= 0.0 &&
         rep.mean.macro_f1 <= 1.0;
}

}  // namespace

int main() {
  run_check(1, "exact Wilcoxon matches 2^n enumeration (200 cases, n <= 12)",
            check_wilcoxon_oracle);
  run_check(2, "normal approximation within 0.01 of exact (tie-free, n 20-25)",
            check_wilcoxon_approx);
  run_check(3, "similarity protocol: self-split similar, disjoint topics not",
            check_similarity_protocol);
  run_check(4, "loss formulas: reduction, ln 2, 4 ln 2, shift, overflow",
            check_loss_formulas);
  run_check(5, "analytic gradient matches finite differences (>=100 draws)",
            check_gradient);
  run_check(6, "minority weight 8 raises shifted recall without precision gain",
            check_weight_sweep_direction);
  run_check(7, "oversampling balances exactly on 50 random fixtures",
            check_oversampling);
  run_check(8, "augmentation safety over 1,000 random sentences",
            check_augmentation_safety);
  run_check(9, "metrics match hand case, counting oracle, and golden render",
            check_metrics);
  run_check(10, "CLI subcommands are byte-deterministic under fixed seeds",
            check_cli_determinism);
  run_check(11, "end-to-end pipeline on the bundled corpus",
            check_end_to_end);

  if (g_failures) {
    std::cout << g_failures << " acceptance check(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance checks passed\n";
  return 0;
}
