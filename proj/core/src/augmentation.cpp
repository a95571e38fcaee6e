#include "skewlens/augmentation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "skewlens/rng.hpp"

namespace skewlens::augmentation {

SynonymLexicon load_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open lexicon: " + path.string());
  SynonymLexicon lex;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError("lexicon line " + std::to_string(lineno) +
                       ": expected `word TAB syn1,syn2,...`");
    std::string word = line.substr(0, tab);
    std::vector<std::string> syns;
    std::stringstream ss(line.substr(tab + 1));
    std::string syn;
    while (std::getline(ss, syn, ','))
      if (!syn.empty() && syn != word) syns.push_back(syn);
    if (syns.empty())
      throw ParseError("lexicon line " + std::to_string(lineno) +
                       ": no usable synonyms for '" + word + "'");
    lex.entries[word] = std::move(syns);
  }
  return lex;
}

Technique technique_from_string(const std::string& s) {
  if (s == "none") return Technique::none;
  if (s == "oversample") return Technique::oversample;
  if (s == "synonym") return Technique::synonym;
  if (s == "delete") return Technique::del;
  throw InvalidArgument("unknown augmentation technique: " + s);
}

const char* technique_name(Technique t) {
  switch (t) {
    case Technique::none: return "none";
    case Technique::oversample: return "oversample";
    case Technique::synonym: return "synonym";
    case Technique::del: return "delete";
  }
  return "?";
}

namespace {

std::vector<std::string> split_ws(const std::string& text) {
  std::vector<std::string> tokens;
  std::string cur;
  for (unsigned char c : text) {
    if (std::isspace(c)) {
      if (!cur.empty()) tokens.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(static_cast<char>(c));
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

std::string join_ws(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::string lowercased(const std::string& s) {
  std::string out = s;
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::size_t> minority_indices(const LabeledDataset& ds,
                                          Label minority) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < ds.sentences.size(); ++i)
    if (ds.sentences[i].label && *ds.sentences[i].label == minority)
      idx.push_back(i);
  return idx;
}

Label find_minority(const LabeledDataset& ds) {
  auto counts = ds.class_counts();
  if (counts.propaganda == 0 || counts.non_propaganda == 0)
    throw InvalidArgument("dataset must contain both classes");
  return counts.propaganda <= counts.non_propaganda ? Label::propaganda
                                                    : Label::non_propaganda;
}

}  // namespace

LabeledDataset oversample(const LabeledDataset& ds, double ratio,
                          std::uint64_t seed) {
  if (!(ratio > 0.0)) throw InvalidArgument("oversample: ratio must be > 0");
  Label minority = find_minority(ds);
  auto counts = ds.class_counts();
  std::size_t minority_count =
      minority == Label::propaganda ? counts.propaganda : counts.non_propaganda;
  std::size_t majority_count =
      minority == Label::propaganda ? counts.non_propaganda : counts.propaganda;
  std::size_t target = static_cast<std::size_t>(
      std::llround(ratio * static_cast<double>(majority_count)));

  LabeledDataset out = ds;
  auto pool = minority_indices(ds, minority);
  Rng rng(seed);
  while (minority_count < target) {
    out.sentences.push_back(ds.sentences[pool[rng.uniform_index(pool.size())]]);
    ++minority_count;
  }
  return out;
}

Sentence synonym_replace(const Sentence& sentence, const SynonymLexicon& lexicon,
                         int n, const StopwordSet& stopwords,
                         std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("synonym_replace: n must be >= 1");
  auto tokens = split_ws(sentence.text);

  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    std::string key = lowercased(tokens[i]);
    if (stopwords.contains(key)) continue;
    if (lexicon.entries.count(key)) candidates.push_back(i);
  }
  if (candidates.empty()) return sentence;

  Rng rng(seed);
  std::size_t to_replace =
      std::min<std::size_t>(static_cast<std::size_t>(n), candidates.size());
  // partial Fisher-Yates picks distinct positions
  for (std::size_t i = 0; i < to_replace; ++i) {
    std::size_t j = i + rng.uniform_index(candidates.size() - i);
    std::swap(candidates[i], candidates[j]);
  }
  for (std::size_t i = 0; i < to_replace; ++i) {
    std::size_t pos = candidates[i];
    const auto& syns = lexicon.entries.at(lowercased(tokens[pos]));
    tokens[pos] = syns[rng.uniform_index(syns.size())];
  }

  Sentence out = sentence;
  out.text = join_ws(tokens);
  return out;
}

Sentence random_delete(const Sentence& sentence, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p < 1.0))
    throw InvalidArgument("random_delete: p must be in [0,1)");
  auto tokens = split_ws(sentence.text);
  if (tokens.empty() || p == 0.0) return sentence;

  Rng rng(seed);
  std::vector<std::string> kept;
  for (auto& tok : tokens)
    if (rng.uniform_real() >= p) kept.push_back(std::move(tok));
  if (kept.empty()) {
    // keep-one floor
    kept.push_back(tokens[rng.uniform_index(tokens.size())]);
  }
  Sentence out = sentence;
  out.text = join_ws(kept);
  return out;
}

LabeledDataset augment_dataset(const LabeledDataset& ds,
                               const AugmentationConfig& cfg,
                               const SynonymLexicon& lexicon,
                               const StopwordSet& stopwords) {
  switch (cfg.technique) {
    case Technique::none:
      return ds;
    case Technique::oversample:
      return oversample(ds, cfg.oversample_ratio, cfg.seed);
    case Technique::synonym:
    case Technique::del:
      break;
  }
  Label minority = find_minority(ds);
  LabeledDataset out = ds;
  auto pool = minority_indices(ds, minority);
  for (std::size_t k = 0; k < pool.size(); ++k) {
    std::uint64_t s = Rng::derive_seed(cfg.seed, k);
    const Sentence& src = ds.sentences[pool[k]];
    if (cfg.technique == Technique::synonym)
      out.sentences.push_back(synonym_replace(
          src, lexicon, cfg.synonyms_per_sentence, stopwords, s));
    else
      out.sentences.push_back(random_delete(src, cfg.deletion_prob, s));
  }
  // balance the remainder so treatments are size-comparable
  auto counts = out.class_counts();
  std::size_t minority_count =
      minority == Label::propaganda ? counts.propaganda : counts.non_propaganda;
  std::size_t majority_count =
      minority == Label::propaganda ? counts.non_propaganda : counts.propaganda;
  std::size_t target = static_cast<std::size_t>(std::llround(
      cfg.oversample_ratio * static_cast<double>(majority_count)));
  if (minority_count < target)
    return oversample(out, cfg.oversample_ratio,
                      Rng::derive_seed(cfg.seed, 0x05e4));
  return out;
}

}  // namespace skewlens::augmentation
