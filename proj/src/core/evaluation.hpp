#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

namespace scriptid {

// Rows are ground-truth classes, columns are found clusters.
class ConfusionMatrix {
 public:
  ConfusionMatrix(std::size_t classes, std::size_t clusters);
  // truth[i] in [0, classes), pred[i] in [0, clusters)
  static ConfusionMatrix from_labels(std::span<const int> truth, std::span<const int> pred);

  std::size_t classes() const noexcept { return classes_; }
  std::size_t clusters() const noexcept { return clusters_; }
  std::size_t& at(std::size_t cls, std::size_t cluster) { return counts_[cls * clusters_ + cluster]; }
  std::size_t at(std::size_t cls, std::size_t cluster) const { return counts_[cls * clusters_ + cluster]; }

  std::size_t total() const;
  std::size_t class_total(std::size_t cls) const;
  std::size_t cluster_total(std::size_t cluster) const;

  ConfusionMatrix scaled(std::size_t factor) const;

 private:
  std::size_t classes_;
  std::size_t clusters_;
  std::vector<std::size_t> counts_;
};

// cluster -> modal class; ties go to the lower class index. Throws EmptyCluster.
std::vector<int> majority_map(const ConfusionMatrix& cm);

struct ClassScore {
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
};

// Clusters mapped to the same class are pooled before scoring.
ClassScore precision_recall_f(const ConfusionMatrix& cm, std::span<const int> mapping, int cls);

// 2 I(truth; pred) / (H(truth) + H(pred)), natural logarithms.
double nmi(std::span<const int> truth, std::span<const int> pred);
double nmi(const ConfusionMatrix& cm);

struct EvalReport {
  std::vector<std::string> class_names;
  std::vector<ClassScore> per_class;  // indexed like class_names
  double nmi = 0.0;
  ConfusionMatrix confusion{0, 0};
  std::vector<int> mapping;  // cluster -> class index
};

EvalReport evaluate(std::span<const int> truth, std::span<const int> pred,
                    std::vector<std::string> class_names);

// Mean and standard deviation tables over repeated runs, one row per method.
class SummaryTable {
 public:
  explicit SummaryTable(std::vector<std::string> class_names) : class_names_(std::move(class_names)) {}

  void add(const std::string& method, const EvalReport& report);
  std::string format() const;

 private:
  struct Samples {
    std::vector<std::vector<ClassScore>> per_class;
    std::vector<double> nmi;
  };
  std::vector<std::string> class_names_;
  std::vector<std::string> order_;
  std::map<std::string, Samples> samples_;
};

}  // namespace scriptid
