#include "skewlens/metrics.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace skewlens::metrics {

namespace {

std::vector<std::string> resolve_names(std::size_t num_classes,
                                       const std::vector<std::string>& names) {
  if (!names.empty()) {
    if (names.size() != num_classes)
      throw InvalidArgument("class_names size mismatch");
    return names;
  }
  if (num_classes == 2) return {"non-propaganda", "propaganda"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < num_classes; ++i)
    out.push_back("class_" + std::to_string(i));
  return out;
}

}  // namespace

EvalReport evaluate(const std::vector<std::size_t>& y_true,
                    const std::vector<std::size_t>& y_pred,
                    std::size_t positive_class,
                    const std::vector<std::string>& class_names) {
  if (y_true.empty() || y_true.size() != y_pred.size())
    throw InvalidArgument("evaluate: inputs empty or length mismatch");

  std::size_t num_classes = positive_class + 1;
  for (std::size_t i = 0; i < y_true.size(); ++i)
    num_classes = std::max({num_classes, y_true[i] + 1, y_pred[i] + 1});

  EvalReport r;
  r.positive_class = positive_class;
  r.confusion.assign(num_classes, std::vector<std::size_t>(num_classes, 0));
  for (std::size_t i = 0; i < y_true.size(); ++i)
    ++r.confusion[y_true[i]][y_pred[i]];

  r.per_class.resize(num_classes);
  double f1_sum = 0.0, weighted_sum = 0.0;
  for (std::size_t k = 0; k < num_classes; ++k) {
    std::size_t tp = r.confusion[k][k], fp = 0, fn = 0;
    for (std::size_t j = 0; j < num_classes; ++j) {
      if (j == k) continue;
      fp += r.confusion[j][k];
      fn += r.confusion[k][j];
    }
    ClassScores& cs = r.per_class[k];
    cs.support = tp + fn;
    cs.precision = (tp + fp == 0) ? 0.0
                                  : static_cast<double>(tp) /
                                        static_cast<double>(tp + fp);
    cs.recall = (tp + fn == 0) ? 0.0
                               : static_cast<double>(tp) /
                                     static_cast<double>(tp + fn);
    cs.f1 = (cs.precision + cs.recall == 0.0)
                ? 0.0
                : 2.0 * cs.precision * cs.recall / (cs.precision + cs.recall);
    f1_sum += cs.f1;
    weighted_sum += cs.f1 * static_cast<double>(cs.support);
  }
  r.macro_f1 = f1_sum / static_cast<double>(num_classes);
  r.weighted_f1 = weighted_sum / static_cast<double>(y_true.size());
  r.positive_f1 = r.per_class[positive_class].f1;
  (void)resolve_names(num_classes, class_names);  // validates size
  return r;
}

std::string format_report(const EvalReport& r,
                          const std::vector<std::string>& class_names) {
  auto names = resolve_names(r.per_class.size(), class_names);
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  out << std::left << std::setw(20) << "class" << std::right << std::setw(11)
      << "precision" << std::setw(11) << "recall" << std::setw(11) << "f1"
      << std::setw(11) << "support" << "\n";
  for (std::size_t k = 0; k < r.per_class.size(); ++k) {
    const auto& cs = r.per_class[k];
    out << std::left << std::setw(20) << names[k] << std::right << std::setw(11)
        << cs.precision << std::setw(11) << cs.recall << std::setw(11) << cs.f1
        << std::setw(11) << cs.support << "\n";
  }
  out << "\n";
  out << std::left << std::setw(20) << "macro-f1" << std::right << std::setw(11)
      << r.macro_f1 << "\n";
  out << std::left << std::setw(20) << "weighted-f1" << std::right
      << std::setw(11) << r.weighted_f1 << "\n";
  out << std::left << std::setw(20)
      << ("positive-f1") << std::right << std::setw(11) << r.positive_f1
      << "\n";
  return out.str();
}

std::string report_to_csv(const EvalReport& r,
                          const std::vector<std::string>& class_names) {
  auto names = resolve_names(r.per_class.size(), class_names);
  std::ostringstream out;
  out << std::fixed << std::setprecision(6);
  out << "class,precision,recall,f1,support\n";
  for (std::size_t k = 0; k < r.per_class.size(); ++k) {
    const auto& cs = r.per_class[k];
    out << names[k] << ',' << cs.precision << ',' << cs.recall << ',' << cs.f1
        << ',' << cs.support << "\n";
  }
  std::size_t total = 0;
  for (const auto& cs : r.per_class) total += cs.support;
  out << "macro,,," << r.macro_f1 << ',' << total << "\n";
  out << "weighted,,," << r.weighted_f1 << ',' << total << "\n";
  out << "positive,,," << r.positive_f1 << ','
      << r.per_class[r.positive_class].support << "\n";
  return out.str();
}

}  // namespace skewlens::metrics
