#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "core/clustering.hpp"
#include "core/feature_matrix.hpp"

namespace scriptid {

// Column-wise z-scores using the population standard deviation. Constant
// columns become all zeros. Requires at least two rows.
FeatureMatrix standardize(const FeatureMatrix& features);

struct WeightedEdge {
  int u = 0;
  int v = 0;
  double weight = 0.0;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

// Undirected similarity graph over documents. Node v carries the integer
// identifier node_ids[v] in 1..n used by the bandwidth filter.
class DocumentGraph {
 public:
  DocumentGraph(std::size_t node_count, std::vector<WeightedEdge> edges,
                std::vector<int> node_ids = {});

  std::size_t node_count() const noexcept { return adjacency_.size(); }
  std::span<const WeightedEdge> edges() const noexcept { return edges_; }
  std::span<const int> node_ids() const noexcept { return node_ids_; }

  struct Neighbor {
    int node;
    double weight;
  };
  std::span<const Neighbor> neighbors(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }

  double strength(int v) const { return strength_[static_cast<std::size_t>(v)]; }
  double total_weight() const noexcept { return total_weight_; }
  std::size_t isolated_count() const;

 private:
  std::vector<WeightedEdge> edges_;  // u < v, sorted
  std::vector<std::vector<Neighbor>> adjacency_;
  std::vector<double> strength_;
  std::vector<int> node_ids_;
  double total_weight_ = 0.0;
};

// For every node, the h nearest documents by L1 distance (ties by lower index)
// are candidates; a candidate u of v is kept iff |id(u) - id(v)| < bandwidth.
// Edge weight is 1 / (1 + L1). Empty node_ids means input order (1..n).
DocumentGraph build_graph(const FeatureMatrix& features, int h, int bandwidth,
                          std::span<const int> node_ids = {});

// Candidate h-NN lists before bandwidth filtering, exposed for ordering hooks.
std::vector<std::vector<int>> nearest_neighbors(const FeatureMatrix& features, int h);

// Identifiers from a reverse Cuthill-McKee ordering of the unfiltered h-NN
// graph, an alternative to input order for the bandwidth filter.
std::vector<int> reverse_cuthill_mckee_ids(const FeatureMatrix& features, int h);

// Weighted Newman modularity; zero for an edgeless graph.
double modularity(const DocumentGraph& graph, std::span<const int> assignment);

struct GaParams {
  int population_size = 100;
  int generations = 100;
  double crossover_rate = 0.8;
  // Probability that a child has one gene redirected to another neighbour.
  double mutation_rate = 0.2;
  int elite_count = 1;
  int tournament_size = 2;
  std::uint64_t rng_seed = 1;
};

struct GaResult {
  Clustering clustering;
  double fitness = 0.0;
  std::vector<double> best_fitness_per_generation;
};

// Locus-based adjacency genotypes: gene v points to a neighbour of v (or to v
// itself when isolated) and decodes to the connected components of the
// pointer graph. Fitness is weighted modularity.
GaResult ga_cluster(const DocumentGraph& graph, const GaParams& params);

// Decodes a locus-based genotype into its connected components.
Clustering decode_genotype(std::span<const int> genes);

// Repeatedly merges the globally closest pair of clusters, where cluster
// distance is the largest L1 distance between their members, until k_target
// clusters remain.
Clustering refine_merge(const Clustering& clustering, const FeatureMatrix& features, int k_target);

}  // namespace scriptid
