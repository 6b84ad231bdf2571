#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "shapetraj/error.hpp"
#include "shapetraj/linalg.hpp"

namespace shapetraj {

namespace detail {

inline std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

}  // namespace detail

/// Confusion counts and derived metrics. Rows are predicted classes, columns
/// are true classes; percentages are column-normalized so each nonempty true
/// class sums to 100.
struct ClassificationReport {
  std::vector<std::string> classes;
  Eigen::MatrixXi counts;
  MatX percent;
  double accuracy = 0.0;           // fraction in [0,1]
  VecX per_class_accuracy;         // diagonal of percent, per true class
  std::vector<double> fold_accuracy;  // per-fold fractions, when folds given
  double fold_mean = 0.0;
  double fold_std = 0.0;

  std::string text() const {
    std::string s;
    s += "classes:";
    for (const auto& c : classes) s += " " + c;
    s += "\nconfusion counts (rows = predicted, columns = true):\n";
    for (std::size_t r = 0; r < classes.size(); ++r) {
      s += "  " + classes[r] + ":";
      for (std::size_t c = 0; c < classes.size(); ++c)
        s += " " + std::to_string(counts(int(r), int(c)));
      s += "\n";
    }
    s += "column-normalized (%):\n";
    for (std::size_t r = 0; r < classes.size(); ++r) {
      s += "  " + classes[r] + ":";
      for (std::size_t c = 0; c < classes.size(); ++c)
        s += " " + detail::fmt("%.2f", percent(int(r), int(c)));
      s += "\n";
    }
    s += "accuracy: " + detail::fmt("%.2f", 100.0 * accuracy) + "%\n";
    s += "per-class accuracy (%):";
    for (std::size_t c = 0; c < classes.size(); ++c)
      s += " " + classes[c] + "=" + detail::fmt("%.2f", per_class_accuracy(int(c)));
    s += "\n";
    if (!fold_accuracy.empty()) {
      s += "folds: " + std::to_string(fold_accuracy.size()) +
           "  mean accuracy: " + detail::fmt("%.2f", 100.0 * fold_mean) +
           "%  std: " + detail::fmt("%.2f", 100.0 * fold_std) + "\n";
      s += "fold accuracies (%):";
      for (double f : fold_accuracy) s += " " + detail::fmt("%.2f", 100.0 * f);
      s += "\n";
    }
    return s;
  }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["classes"] = classes;
    auto rows = nlohmann::json::array();
    auto prows = nlohmann::json::array();
    for (std::size_t r = 0; r < classes.size(); ++r) {
      auto row = nlohmann::json::array();
      auto prow = nlohmann::json::array();
      for (std::size_t c = 0; c < classes.size(); ++c) {
        row.push_back(counts(int(r), int(c)));
        prow.push_back(percent(int(r), int(c)));
      }
      rows.push_back(row);
      prows.push_back(prow);
    }
    j["counts"] = rows;
    j["percent"] = prows;
    j["accuracy"] = accuracy;
    j["per_class_accuracy"] = std::vector<double>(
        per_class_accuracy.data(), per_class_accuracy.data() + per_class_accuracy.size());
    if (!fold_accuracy.empty()) {
      j["fold_accuracy"] = fold_accuracy;
      j["fold_mean"] = fold_mean;
      j["fold_std"] = fold_std;
    }
    return j;
  }
};

/// Builds the report from aligned prediction/truth lists. fold_ids, when
/// given, must align with the lists; fold statistics are computed from them.
inline ClassificationReport confusion_and_metrics(
    const std::vector<std::string>& predictions,
    const std::vector<std::string>& truths,
    const std::vector<std::string>& classes,
    const std::vector<int>* fold_ids = nullptr) {
  if (predictions.size() != truths.size())
    throw LengthMismatch("confusion_and_metrics: " + std::to_string(predictions.size()) +
                         " predictions vs " + std::to_string(truths.size()) + " truths");
  if (fold_ids && fold_ids->size() != truths.size())
    throw LengthMismatch("confusion_and_metrics: fold ids do not align");

  std::map<std::string, int> index;
  for (std::size_t i = 0; i < classes.size(); ++i) index[classes[i]] = int(i);
  auto lookup = [&](const std::string& name) {
    auto it = index.find(name);
    if (it == index.end())
      throw InvalidInput("confusion_and_metrics: label '" + name + "' not in class list");
    return it->second;
  };

  ClassificationReport rep;
  rep.classes = classes;
  const int nc = int(classes.size());
  rep.counts = Eigen::MatrixXi::Zero(nc, nc);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < truths.size(); ++i) {
    int p = lookup(predictions[i]);
    int t = lookup(truths[i]);
    rep.counts(p, t) += 1;
    if (p == t) ++correct;
  }
  rep.accuracy = truths.empty() ? 0.0 : double(correct) / double(truths.size());

  rep.percent = MatX::Zero(nc, nc);
  rep.per_class_accuracy = VecX::Zero(nc);
  for (int c = 0; c < nc; ++c) {
    int total = rep.counts.col(c).sum();
    if (total == 0) continue;
    for (int r = 0; r < nc; ++r)
      rep.percent(r, c) = 100.0 * double(rep.counts(r, c)) / double(total);
    rep.per_class_accuracy(c) = rep.percent(c, c);
  }

  if (fold_ids) {
    std::map<int, std::pair<int, int>> per_fold;  // fold -> (correct, total)
    for (std::size_t i = 0; i < truths.size(); ++i) {
      auto& [ok, total] = per_fold[(*fold_ids)[i]];
      total += 1;
      if (predictions[i] == truths[i]) ok += 1;
    }
    for (const auto& [fold, stat] : per_fold)
      rep.fold_accuracy.push_back(double(stat.first) / double(stat.second));
    double mean = 0.0;
    for (double f : rep.fold_accuracy) mean += f;
    mean /= double(rep.fold_accuracy.size());
    double var = 0.0;
    for (double f : rep.fold_accuracy) var += (f - mean) * (f - mean);
    rep.fold_mean = mean;
    rep.fold_std = rep.fold_accuracy.size() > 1
                       ? std::sqrt(var / double(rep.fold_accuracy.size() - 1))
                       : 0.0;
  }
  return rep;
}

}  // namespace shapetraj
