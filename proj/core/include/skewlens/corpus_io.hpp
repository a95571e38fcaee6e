#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "skewlens/types.hpp"

namespace skewlens::corpus_io {

// The 18 fragment technique names accepted by span files.
const std::vector<std::string>& technique_registry();

bool is_known_technique(const std::string& name);

// Articles are files `article<ID>.txt`, one sentence per line (LF).
// Labels TSV: `article_id TAB sentence_index TAB label`, no header.
LabeledDataset load_slc_dataset(const std::filesystem::path& articles_dir,
                                const std::filesystem::path& labels_path,
                                const std::string& name = "custom");

// Canonical TSV serialization of a dataset's labels (sorted by article, index).
void save_slc_labels(const LabeledDataset& ds,
                     const std::filesystem::path& labels_path);

// Spans TSV: `article_id TAB technique TAB start TAB end`, no header.
std::vector<SpanAnnotation> load_flc_annotations(
    const std::filesystem::path& path);

// Among spans sharing an identical (start, end) range, keeps exactly one,
// chosen uniformly at random. Partial overlaps pass through untouched.
std::vector<SpanAnnotation> resolve_overlapping_spans(
    const std::vector<SpanAnnotation>& spans, std::uint64_t seed);

// Per-article sentence byte ranges, half-open, in line order.
struct ArticleLayout {
  std::vector<std::pair<std::size_t, std::size_t>> sentence_ranges;
  std::size_t total_length = 0;
};

using ArticleOffsets = std::map<std::string, ArticleLayout>;

// Computes sentence byte offsets for every article file in a directory.
ArticleOffsets compute_article_offsets(
    const std::filesystem::path& articles_dir);

// Keeps exactly the sentences whose byte range intersects at least one span.
LabeledDataset filter_fragment_sentences(const LabeledDataset& ds,
                                         const std::vector<SpanAnnotation>& spans,
                                         const ArticleOffsets& offsets);

// Lowercase, split on runs of non-alphanumeric bytes, drop stopwords.
std::vector<std::string> tokenize(const std::string& text,
                                  const StopwordSet& stopwords);

StopwordSet load_stopwords(const std::filesystem::path& path);

enum class SplitGranularity { sentence, article };

// Shuffle units with the seeded generator, cut at
// floor(train_fraction * unit_count). Same seed, same split.
std::pair<LabeledDataset, LabeledDataset> split_dataset(
    const LabeledDataset& ds, double train_fraction, std::uint64_t seed,
    SplitGranularity granularity = SplitGranularity::sentence);

}  // namespace skewlens::corpus_io
