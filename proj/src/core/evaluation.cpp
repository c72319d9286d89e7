#include "core/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "core/error.hpp"

namespace scriptid {

ConfusionMatrix::ConfusionMatrix(std::size_t classes, std::size_t clusters)
    : classes_(classes), clusters_(clusters), counts_(classes * clusters, 0) {}

ConfusionMatrix ConfusionMatrix::from_labels(std::span<const int> truth, std::span<const int> pred) {
  if (truth.size() != pred.size()) {
    fail(ErrorCode::kInvalidArgument, "truth and prediction cover different document sets");
  }
  int classes = 0;
  int clusters = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] < 0 || pred[i] < 0) fail(ErrorCode::kInvalidArgument, "labels must be non-negative");
    classes = std::max(classes, truth[i] + 1);
    clusters = std::max(clusters, pred[i] + 1);
  }
  ConfusionMatrix cm(static_cast<std::size_t>(classes), static_cast<std::size_t>(clusters));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    ++cm.at(static_cast<std::size_t>(truth[i]), static_cast<std::size_t>(pred[i]));
  }
  return cm;
}

std::size_t ConfusionMatrix::total() const {
  std::size_t t = 0;
  for (auto c : counts_) t += c;
  return t;
}

std::size_t ConfusionMatrix::class_total(std::size_t cls) const {
  std::size_t t = 0;
  for (std::size_t j = 0; j < clusters_; ++j) t += at(cls, j);
  return t;
}

std::size_t ConfusionMatrix::cluster_total(std::size_t cluster) const {
  std::size_t t = 0;
  for (std::size_t i = 0; i < classes_; ++i) t += at(i, cluster);
  return t;
}

ConfusionMatrix ConfusionMatrix::scaled(std::size_t factor) const {
  ConfusionMatrix out = *this;
  for (auto& c : out.counts_) c *= factor;
  return out;
}

std::vector<int> majority_map(const ConfusionMatrix& cm) {
  std::vector<int> mapping(cm.clusters(), 0);
  for (std::size_t j = 0; j < cm.clusters(); ++j) {
    if (cm.cluster_total(j) == 0) {
      fail(ErrorCode::kEmptyCluster, "cluster " + std::to_string(j) + " has no documents");
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < cm.classes(); ++i) {
      if (cm.at(i, j) > cm.at(best, j)) best = i;
    }
    mapping[j] = static_cast<int>(best);
  }
  return mapping;
}

ClassScore precision_recall_f(const ConfusionMatrix& cm, std::span<const int> mapping, int cls) {
  if (cls < 0 || static_cast<std::size_t>(cls) >= cm.classes()) {
    fail(ErrorCode::kUnknownClass, "unknown class index " + std::to_string(cls));
  }
  if (mapping.size() != cm.clusters()) {
    fail(ErrorCode::kInvalidArgument, "mapping does not cover every cluster");
  }
  const auto c = static_cast<std::size_t>(cls);
  std::size_t tp = 0;
  std::size_t predicted = 0;
  for (std::size_t j = 0; j < cm.clusters(); ++j) {
    if (mapping[j] != cls) continue;
    tp += cm.at(c, j);
    predicted += cm.cluster_total(j);
  }
  const std::size_t actual = cm.class_total(c);
  ClassScore s;
  s.precision = predicted > 0 ? static_cast<double>(tp) / static_cast<double>(predicted) : 0.0;
  s.recall = actual > 0 ? static_cast<double>(tp) / static_cast<double>(actual) : 0.0;
  const double pr = s.precision + s.recall;
  s.f_measure = pr > 0.0 ? 2.0 * s.precision * s.recall / pr : 0.0;
  return s;
}

double nmi(const ConfusionMatrix& cm) {
  const double n = static_cast<double>(cm.total());
  if (n == 0.0) fail(ErrorCode::kInvalidArgument, "NMI of an empty contingency table");
  auto entropy = [n](const std::vector<double>& marg) {
    double h = 0.0;
    for (double m : marg) {
      if (m > 0.0) h -= (m / n) * std::log(m / n);
    }
    return h;
  };
  std::vector<double> rows(cm.classes()), cols(cm.clusters());
  for (std::size_t i = 0; i < cm.classes(); ++i) rows[i] = static_cast<double>(cm.class_total(i));
  for (std::size_t j = 0; j < cm.clusters(); ++j) cols[j] = static_cast<double>(cm.cluster_total(j));
  double mi = 0.0;
  for (std::size_t i = 0; i < cm.classes(); ++i) {
    for (std::size_t j = 0; j < cm.clusters(); ++j) {
      const double nij = static_cast<double>(cm.at(i, j));
      if (nij > 0.0) mi += (nij / n) * std::log(n * nij / (rows[i] * cols[j]));
    }
  }
  const double denom = entropy(rows) + entropy(cols);
  if (denom <= 0.0) return 1.0;  // both partitions are a single block
  return std::clamp(2.0 * mi / denom, 0.0, 1.0);
}

double nmi(std::span<const int> truth, std::span<const int> pred) {
  return nmi(ConfusionMatrix::from_labels(truth, pred));
}

EvalReport evaluate(std::span<const int> truth, std::span<const int> pred,
                    std::vector<std::string> class_names) {
  EvalReport r;
  ConfusionMatrix cm = ConfusionMatrix::from_labels(truth, pred);
  if (class_names.size() < cm.classes()) {
    fail(ErrorCode::kInvalidArgument, "fewer class names than classes");
  }
  // widen to the full class list so absent classes still get a row
  ConfusionMatrix full(class_names.size(), cm.clusters());
  for (std::size_t i = 0; i < cm.classes(); ++i) {
    for (std::size_t j = 0; j < cm.clusters(); ++j) full.at(i, j) = cm.at(i, j);
  }
  r.mapping = majority_map(full);
  for (std::size_t c = 0; c < class_names.size(); ++c) {
    r.per_class.push_back(precision_recall_f(full, r.mapping, static_cast<int>(c)));
  }
  r.nmi = nmi(full);
  r.confusion = std::move(full);
  r.class_names = std::move(class_names);
  return r;
}

void SummaryTable::add(const std::string& method, const EvalReport& report) {
  auto [it, inserted] = samples_.try_emplace(method);
  if (inserted) order_.push_back(method);
  it->second.per_class.push_back(report.per_class);
  it->second.nmi.push_back(report.nmi);
}

namespace {

std::string mean_sd(const std::vector<double>& xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= static_cast<double>(xs.size());
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f (%.4f)", mean, std::sqrt(var));
  return buf;
}

}  // namespace

std::string SummaryTable::format() const {
  std::ostringstream out;
  char line[256];
  std::snprintf(line, sizeof line, "%-14s %-12s %-17s %-17s %-17s\n", "Method", "Class", "Precision",
                "Recall", "F-measure");
  out << line;
  for (const auto& method : order_) {
    const Samples& s = samples_.at(method);
    for (std::size_t c = 0; c < class_names_.size(); ++c) {
      std::vector<double> p, r, f;
      for (const auto& run : s.per_class) {
        p.push_back(run[c].precision);
        r.push_back(run[c].recall);
        f.push_back(run[c].f_measure);
      }
      std::snprintf(line, sizeof line, "%-14s %-12s %-17s %-17s %-17s\n",
                    c == 0 ? method.c_str() : "", class_names_[c].c_str(), mean_sd(p).c_str(),
                    mean_sd(r).c_str(), mean_sd(f).c_str());
      out << line;
    }
    std::snprintf(line, sizeof line, "%-14s %-12s %s\n", "", "NMI", mean_sd(s.nmi).c_str());
    out << line;
  }
  out << "runs per method: " << (order_.empty() ? 0 : samples_.at(order_.front()).nmi.size()) << '\n';
  return out.str();
}

}  // namespace scriptid
