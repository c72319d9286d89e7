#pragma once

#include <span>
#include <vector>

namespace scriptid {

// Partition of documents into clusters 0..k-1, none empty. Labels are
// canonical: clusters are numbered in order of their first document.
class Clustering {
 public:
  Clustering() = default;
  // Accepts arbitrary non-negative labels and renumbers them canonically.
  explicit Clustering(std::span<const int> labels);

  std::span<const int> assignment() const noexcept { return assignment_; }
  int operator[](std::size_t doc) const { return assignment_[doc]; }
  std::size_t size() const noexcept { return assignment_.size(); }
  int k() const noexcept { return k_; }

  std::vector<std::vector<int>> members() const;

  friend bool operator==(const Clustering&, const Clustering&) = default;

 private:
  std::vector<int> assignment_;
  int k_ = 0;
};

}  // namespace scriptid
