#include "skewlens/corpus_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "skewlens/rng.hpp"

namespace skewlens::corpus_io {

namespace fs = std::filesystem;

const std::vector<std::string>& technique_registry() {
  static const std::vector<std::string> names = {
      "Appeal_to_Authority",
      "Appeal_to_fear-prejudice",
      "Bandwagon",
      "Black-and-White_Fallacy",
      "Causal_Oversimplification",
      "Doubt",
      "Exaggeration,Minimisation",
      "Flag-Waving",
      "Loaded_Language",
      "Name_Calling,Labeling",
      "Obfuscation,Intentional_Vagueness,Confusion",
      "Red_Herring",
      "Reductio_ad_hitlerum",
      "Repetition",
      "Slogans",
      "Straw_Men",
      "Thought-terminating_Cliches",
      "Whataboutism",
  };
  return names;
}

bool is_known_technique(const std::string& name) {
  const auto& reg = technique_registry();
  return std::find(reg.begin(), reg.end(), name) != reg.end();
}

namespace {

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return fields;
}

std::string trimmed(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

LabeledDataset load_slc_dataset(const fs::path& articles_dir,
                                const fs::path& labels_path,
                                const std::string& name) {
  if (!fs::is_directory(articles_dir))
    throw ParseError("not a directory: " + articles_dir.string());

  // article_id -> lines, loaded lazily as labels reference them
  std::map<std::string, std::vector<std::string>> articles;
  std::vector<fs::path> article_files;
  for (const auto& entry : fs::directory_iterator(articles_dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string fn = entry.path().filename().string();
    if (fn.rfind("article", 0) == 0 && entry.path().extension() == ".txt")
      article_files.push_back(entry.path());
  }
  std::sort(article_files.begin(), article_files.end());
  for (const auto& p : article_files) {
    std::string stem = p.stem().string();  // "article<ID>"
    articles[stem.substr(7)] = read_lines(p);
  }

  // (article_id, index) -> label
  std::map<std::pair<std::string, int>, Label> labels;
  std::size_t lineno = 0;
  for (const auto& line : read_lines(labels_path)) {
    ++lineno;
    if (line.empty()) continue;
    auto fields = split_tabs(line);
    if (fields.size() != 3)
      throw ParseError("labels line " + std::to_string(lineno) +
                       ": expected 3 tab-separated fields");
    const std::string& id = fields[0];
    int index = 0;
    try {
      index = std::stoi(fields[1]);
    } catch (const std::exception&) {
      throw ParseError("labels line " + std::to_string(lineno) +
                       ": bad sentence index '" + fields[1] + "'");
    }
    Label label;
    if (fields[2] == "propaganda")
      label = Label::propaganda;
    else if (fields[2] == "non-propaganda")
      label = Label::non_propaganda;
    else
      throw ParseError("labels line " + std::to_string(lineno) +
                       ": unknown label '" + fields[2] + "'");
    auto it = articles.find(id);
    if (it == articles.end())
      throw ParseError("labels line " + std::to_string(lineno) +
                       ": no article file for id '" + id + "'");
    if (index < 1 || static_cast<std::size_t>(index) > it->second.size())
      throw ParseError("labels line " + std::to_string(lineno) +
                       ": sentence index " + std::to_string(index) +
                       " beyond article " + id + " (" +
                       std::to_string(it->second.size()) + " lines)");
    labels[{id, index}] = label;
  }

  LabeledDataset ds;
  ds.name = name;
  for (const auto& [id, lines] : articles) {
    for (std::size_t i = 0; i < lines.size(); ++i) {
      Sentence s;
      s.article_id = id;
      s.index = static_cast<int>(i + 1);
      s.text = lines[i];
      auto it = labels.find({id, s.index});
      if (it != labels.end()) s.label = it->second;
      ds.sentences.push_back(std::move(s));
    }
  }
  return ds;
}

void save_slc_labels(const LabeledDataset& ds, const fs::path& labels_path) {
  std::ofstream out(labels_path, std::ios::binary);
  if (!out) throw ParseError("cannot write file: " + labels_path.string());
  std::vector<const Sentence*> labeled;
  for (const auto& s : ds.sentences)
    if (s.label) labeled.push_back(&s);
  std::sort(labeled.begin(), labeled.end(),
            [](const Sentence* a, const Sentence* b) {
              return std::tie(a->article_id, a->index) <
                     std::tie(b->article_id, b->index);
            });
  for (const Sentence* s : labeled)
    out << s->article_id << '\t' << s->index << '\t' << label_name(*s->label)
        << '\n';
}

std::vector<SpanAnnotation> load_flc_annotations(const fs::path& path) {
  std::vector<SpanAnnotation> spans;
  std::size_t lineno = 0;
  for (const auto& line : read_lines(path)) {
    ++lineno;
    if (line.empty()) continue;
    auto fields = split_tabs(line);
    if (fields.size() != 4)
      throw ParseError("spans line " + std::to_string(lineno) +
                       ": expected 4 tab-separated fields");
    SpanAnnotation sp;
    sp.article_id = fields[0];
    sp.technique = fields[1];
    if (!is_known_technique(sp.technique))
      throw ParseError("spans line " + std::to_string(lineno) +
                       ": unknown technique '" + sp.technique + "'");
    try {
      sp.start_char = std::stoull(fields[2]);
      sp.end_char = std::stoull(fields[3]);
    } catch (const std::exception&) {
      throw ParseError("spans line " + std::to_string(lineno) +
                       ": bad span offsets");
    }
    if (sp.start_char >= sp.end_char)
      throw ParseError("spans line " + std::to_string(lineno) +
                       ": start " + std::to_string(sp.start_char) +
                       " >= end " + std::to_string(sp.end_char));
    spans.push_back(std::move(sp));
  }
  return spans;
}

std::vector<SpanAnnotation> resolve_overlapping_spans(
    const std::vector<SpanAnnotation>& spans, std::uint64_t seed) {
  // group indices by identical (start, end)
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>>
      groups;
  for (std::size_t i = 0; i < spans.size(); ++i)
    groups[{spans[i].start_char, spans[i].end_char}].push_back(i);

  std::vector<bool> keep(spans.size(), true);
  Rng rng(seed);
  // iterate groups in key order so choices are reproducible
  for (const auto& [range, members] : groups) {
    if (members.size() < 2) continue;
    std::size_t chosen = members[rng.uniform_index(members.size())];
    for (std::size_t i : members) keep[i] = (i == chosen);
  }
  std::vector<SpanAnnotation> out;
  for (std::size_t i = 0; i < spans.size(); ++i)
    if (keep[i]) out.push_back(spans[i]);
  return out;
}

ArticleOffsets compute_article_offsets(const fs::path& articles_dir) {
  ArticleOffsets offsets;
  for (const auto& entry : fs::directory_iterator(articles_dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string fn = entry.path().filename().string();
    if (fn.rfind("article", 0) != 0 || entry.path().extension() != ".txt")
      continue;
    std::string id = entry.path().stem().string().substr(7);
    ArticleLayout layout;
    std::size_t pos = 0;
    for (const auto& line : read_lines(entry.path())) {
      layout.sentence_ranges.emplace_back(pos, pos + line.size());
      pos += line.size() + 1;  // LF
    }
    layout.total_length = pos;
    offsets[id] = std::move(layout);
  }
  return offsets;
}

LabeledDataset filter_fragment_sentences(const LabeledDataset& ds,
                                         const std::vector<SpanAnnotation>& spans,
                                         const ArticleOffsets& offsets) {
  std::map<std::string, std::vector<const SpanAnnotation*>> by_article;
  for (const auto& sp : spans) by_article[sp.article_id].push_back(&sp);

  LabeledDataset out;
  out.name = ds.name;
  for (const auto& s : ds.sentences) {
    auto oit = offsets.find(s.article_id);
    if (oit == offsets.end())
      throw ParseError("no offsets for article " + s.article_id);
    const auto& layout = oit->second;
    if (s.index < 1 ||
        static_cast<std::size_t>(s.index) > layout.sentence_ranges.size())
      throw ParseError("sentence index " + std::to_string(s.index) +
                       " outside article " + s.article_id);
    auto [begin, end] = layout.sentence_ranges[s.index - 1];
    if (end > layout.total_length)
      throw ParseError("sentence range beyond article " + s.article_id);
    auto ait = by_article.find(s.article_id);
    if (ait == by_article.end()) continue;
    bool hit = false;
    for (const SpanAnnotation* sp : ait->second) {
      // half-open intervals
      if (sp->start_char < end && begin < sp->end_char) {
        hit = true;
        break;
      }
    }
    if (hit) out.sentences.push_back(s);
  }
  return out;
}

std::vector<std::string> tokenize(const std::string& text,
                                  const StopwordSet& stopwords) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty() && !stopwords.contains(current))
      tokens.push_back(current);
    current.clear();
  };
  for (unsigned char c : text) {
    if (std::isalnum(c))
      current.push_back(static_cast<char>(std::tolower(c)));
    else
      flush();
  }
  flush();
  return tokens;
}

StopwordSet load_stopwords(const fs::path& path) {
  StopwordSet sw;
  for (const auto& line : read_lines(path)) {
    std::string w = trimmed(line);
    if (!w.empty()) sw.words.insert(w);
  }
  return sw;
}

std::pair<LabeledDataset, LabeledDataset> split_dataset(
    const LabeledDataset& ds, double train_fraction, std::uint64_t seed,
    SplitGranularity granularity) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0))
    throw InvalidArgument("train_fraction must be in (0,1)");
  if (!ds.fully_labeled())
    throw InvalidArgument("split_dataset requires a fully labeled dataset");

  auto shuffle = [](std::vector<std::size_t>& idx, std::uint64_t s) {
    Rng rng(s);
    for (std::size_t i = idx.size(); i > 1; --i)
      std::swap(idx[i - 1], idx[rng.uniform_index(i)]);
  };

  LabeledDataset train, test;
  train.name = ds.name + "-train";
  test.name = ds.name + "-test";

  if (granularity == SplitGranularity::sentence) {
    std::vector<std::size_t> idx(ds.sentences.size());
    std::iota(idx.begin(), idx.end(), 0);
    shuffle(idx, seed);
    std::size_t cut = static_cast<std::size_t>(
        std::floor(train_fraction * static_cast<double>(idx.size())));
    if (cut == 0 || cut == idx.size())
      throw InvalidArgument("split fraction yields an empty side");
    for (std::size_t i = 0; i < idx.size(); ++i)
      (i < cut ? train : test).sentences.push_back(ds.sentences[idx[i]]);
  } else {
    std::vector<std::string> ids;
    for (const auto& s : ds.sentences)
      if (ids.empty() || ids.back() != s.article_id)
        if (std::find(ids.begin(), ids.end(), s.article_id) == ids.end())
          ids.push_back(s.article_id);
    std::vector<std::size_t> idx(ids.size());
    std::iota(idx.begin(), idx.end(), 0);
    shuffle(idx, seed);
    std::size_t cut = static_cast<std::size_t>(
        std::floor(train_fraction * static_cast<double>(idx.size())));
    if (cut == 0 || cut == idx.size())
      throw InvalidArgument("split fraction yields an empty side");
    std::set<std::string> train_ids;
    for (std::size_t i = 0; i < cut; ++i) train_ids.insert(ids[idx[i]]);
    for (const auto& s : ds.sentences)
      (train_ids.count(s.article_id) ? train : test).sentences.push_back(s);
  }
  return {std::move(train), std::move(test)};
}

}  // namespace skewlens::corpus_io
