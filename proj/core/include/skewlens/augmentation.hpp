#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "skewlens/types.hpp"

namespace skewlens::augmentation {

struct SynonymLexicon {
  std::map<std::string, std::vector<std::string>> entries;
};

// Lexicon file: `word TAB syn1,syn2,...` per line, lowercase.
SynonymLexicon load_lexicon(const std::filesystem::path& path);

enum class Technique { none, oversample, synonym, del };

Technique technique_from_string(const std::string& s);
const char* technique_name(Technique t);

struct AugmentationConfig {
  Technique technique = Technique::none;
  double deletion_prob = 0.1;         // [0, 1)
  int synonyms_per_sentence = 1;      // >= 1
  double oversample_ratio = 1.0;      // minority:majority target, > 0
  std::uint64_t seed = 0;
};

// Appends random-with-replacement minority copies until
// minority == round(ratio * majority). Originals all retained.
LabeledDataset oversample(const LabeledDataset& ds, double ratio,
                          std::uint64_t seed);

// Replaces up to n distinct non-stopword tokens that have lexicon entries.
Sentence synonym_replace(const Sentence& sentence, const SynonymLexicon& lexicon,
                         int n, const StopwordSet& stopwords,
                         std::uint64_t seed);

// Deletes each token independently with probability p; always keeps >= 1.
Sentence random_delete(const Sentence& sentence, double p, std::uint64_t seed);

// Composition used by the comparison experiments: perturbed minority copies
// first (synonym/delete), then oversample to the configured ratio.
LabeledDataset augment_dataset(const LabeledDataset& ds,
                               const AugmentationConfig& cfg,
                               const SynonymLexicon& lexicon,
                               const StopwordSet& stopwords = {});

}  // namespace skewlens::augmentation
