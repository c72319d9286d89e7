#pragma once

#include <cstdint>
#include <vector>

#include "core/clustering.hpp"
#include "core/feature_matrix.hpp"

namespace scriptid {

struct KMeansResult {
  Clustering clustering;
  double objective = 0.0;  // sum of squared Euclidean distances to centroids
};

// Lloyd iterations from k-means++ seeds; the best of `restarts` runs wins.
KMeansResult kmeans(const FeatureMatrix& features, int k, std::uint64_t rng_seed, int restarts = 100);

struct LinkageMerge {
  int a = 0;  // surviving cluster (lower id)
  int b = 0;  // absorbed cluster
  double distance = 0.0;
};

struct LinkageResult {
  Clustering clustering;
  std::vector<LinkageMerge> merges;
};

// UPGMA over L1 distances, starting from singletons (cluster id = document
// index), stopped at k clusters. Ties go to the lowest (a, b) id pair.
LinkageResult average_linkage(const FeatureMatrix& features, int k);

}  // namespace scriptid
