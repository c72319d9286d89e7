#include "core/clustering.hpp"

#include <unordered_map>

#include "core/error.hpp"

namespace scriptid {

Clustering::Clustering(std::span<const int> labels) {
  std::unordered_map<int, int> remap;
  assignment_.reserve(labels.size());
  for (int l : labels) {
    if (l < 0) fail(ErrorCode::kInvalidArgument, "cluster labels must be non-negative");
    auto [it, inserted] = remap.try_emplace(l, k_);
    if (inserted) ++k_;
    assignment_.push_back(it->second);
  }
}

std::vector<std::vector<int>> Clustering::members() const {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(k_));
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    out[static_cast<std::size_t>(assignment_[i])].push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace scriptid
