#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "skewlens/types.hpp"

namespace skewlens::metrics {

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t support = 0;
};

struct EvalReport {
  std::vector<std::vector<std::size_t>> confusion;  // rows true, cols predicted
  std::vector<ClassScores> per_class;
  double macro_f1 = 0.0;
  double weighted_f1 = 0.0;
  double positive_f1 = 0.0;
  std::size_t positive_class = 1;
};

// Class-wise precision/recall/F1 from predictions. 0/0 counts as 0.
EvalReport evaluate(const std::vector<std::size_t>& y_true,
                    const std::vector<std::size_t>& y_pred,
                    std::size_t positive_class,
                    const std::vector<std::string>& class_names = {});

// Fixed-width table, 4 decimal places, deterministic.
std::string format_report(const EvalReport& r,
                          const std::vector<std::string>& class_names = {});

// One row per class plus aggregate rows: `class,precision,recall,f1,support`.
std::string report_to_csv(const EvalReport& r,
                          const std::vector<std::string>& class_names = {});

}  // namespace skewlens::metrics
