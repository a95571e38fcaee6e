#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace skewlens {

enum class Label : int { non_propaganda = 0, propaganda = 1 };

inline const char* label_name(Label l) {
  return l == Label::propaganda ? "propaganda" : "non-propaganda";
}

struct Sentence {
  std::string article_id;
  int index = 1;  // 1-based within article
  std::string text;
  std::optional<Label> label;
};

struct ClassCounts {
  std::size_t propaganda = 0;
  std::size_t non_propaganda = 0;
  std::size_t labeled() const { return propaganda + non_propaganda; }
};

struct LabeledDataset {
  std::vector<Sentence> sentences;
  std::string name = "custom";

  ClassCounts class_counts() const {
    ClassCounts c;
    for (const auto& s : sentences) {
      if (!s.label) continue;
      if (*s.label == Label::propaganda)
        ++c.propaganda;
      else
        ++c.non_propaganda;
    }
    return c;
  }

  bool fully_labeled() const {
    for (const auto& s : sentences)
      if (!s.label) return false;
    return true;
  }
};

struct SpanAnnotation {
  std::string article_id;
  std::string technique;
  std::size_t start_char = 0;  // byte offset, inclusive
  std::size_t end_char = 0;    // byte offset, exclusive
};

struct StopwordSet {
  std::set<std::string> words;

  bool contains(const std::string& w) const { return words.count(w) != 0; }
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace skewlens
