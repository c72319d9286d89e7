#include "core/gaicda_cluster.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "core/error.hpp"

namespace scriptid {

FeatureMatrix standardize(const FeatureMatrix& features) {
  const std::size_t n = features.rows();
  if (n < 2) fail(ErrorCode::kTooFewDocuments, "standardization needs at least 2 documents");
  FeatureMatrix out(n, features.cols());
  for (std::size_t c = 0; c < features.cols(); ++c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < n; ++r) mean += features(r, c);
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t r = 0; r < n; ++r) var += (features(r, c) - mean) * (features(r, c) - mean);
    var /= static_cast<double>(n);
    const double sd = std::sqrt(var);
    const bool constant = sd <= 1e-12 * std::max(1.0, std::abs(mean));
    for (std::size_t r = 0; r < n; ++r) {
      out(r, c) = constant ? 0.0 : (features(r, c) - mean) / sd;
    }
  }
  return out;
}

DocumentGraph::DocumentGraph(std::size_t node_count, std::vector<WeightedEdge> edges,
                             std::vector<int> node_ids)
    : adjacency_(node_count), strength_(node_count, 0.0), node_ids_(std::move(node_ids)) {
  if (node_ids_.empty()) {
    node_ids_.resize(node_count);
    std::iota(node_ids_.begin(), node_ids_.end(), 1);
  }
  if (node_ids_.size() != node_count) {
    fail(ErrorCode::kInvalidArgument, "node identifier count does not match node count");
  }
  for (auto& e : edges) {
    if (e.u == e.v) fail(ErrorCode::kInvalidArgument, "self-loops are not allowed");
    if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(std::max(e.u, e.v)) >= node_count) {
      fail(ErrorCode::kInvalidArgument, "edge endpoint out of range");
    }
    if (!(e.weight > 0.0)) fail(ErrorCode::kInvalidArgument, "edge weights must be positive");
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i].u == edges[i - 1].u && edges[i].v == edges[i - 1].v) {
      fail(ErrorCode::kInvalidArgument, "duplicate edge");
    }
  }
  edges_ = std::move(edges);
  for (const auto& e : edges_) {
    adjacency_[static_cast<std::size_t>(e.u)].push_back({e.v, e.weight});
    adjacency_[static_cast<std::size_t>(e.v)].push_back({e.u, e.weight});
    strength_[static_cast<std::size_t>(e.u)] += e.weight;
    strength_[static_cast<std::size_t>(e.v)] += e.weight;
    total_weight_ += e.weight;
  }
  for (auto& adj : adjacency_) {
    std::sort(adj.begin(), adj.end(), [](const Neighbor& a, const Neighbor& b) { return a.node < b.node; });
  }
}

std::size_t DocumentGraph::isolated_count() const {
  return static_cast<std::size_t>(
      std::count_if(adjacency_.begin(), adjacency_.end(), [](const auto& a) { return a.empty(); }));
}

std::vector<std::vector<int>> nearest_neighbors(const FeatureMatrix& features, int h) {
  const int n = static_cast<int>(features.rows());
  if (n < 2) fail(ErrorCode::kTooFewDocuments, "graph construction needs at least 2 documents");
  if (h < 1 || h > n - 1) {
    fail(ErrorCode::kInvalidArgument,
         "neighbourhood size h=" + std::to_string(h) + " outside [1, " + std::to_string(n - 1) + "]");
  }
  std::vector<std::vector<int>> out(static_cast<std::size_t>(n));
  std::vector<std::pair<double, int>> cand;
  for (int v = 0; v < n; ++v) {
    cand.clear();
    for (int u = 0; u < n; ++u) {
      if (u != v) cand.emplace_back(l1_distance(features.row(v), features.row(u)), u);
    }
    std::partial_sort(cand.begin(), cand.begin() + h, cand.end());
    for (int i = 0; i < h; ++i) out[static_cast<std::size_t>(v)].push_back(cand[static_cast<std::size_t>(i)].second);
  }
  return out;
}

DocumentGraph build_graph(const FeatureMatrix& features, int h, int bandwidth,
                          std::span<const int> node_ids) {
  const int n = static_cast<int>(features.rows());
  if (bandwidth < 1) fail(ErrorCode::kInvalidArgument, "bandwidth threshold T must be >= 1");
  std::vector<int> ids(node_ids.begin(), node_ids.end());
  if (ids.empty()) {
    ids.resize(static_cast<std::size_t>(n));
    std::iota(ids.begin(), ids.end(), 1);
  }
  const auto knn = nearest_neighbors(features, h);

  std::vector<std::vector<char>> linked(static_cast<std::size_t>(n), std::vector<char>(static_cast<std::size_t>(n), 0));
  std::vector<WeightedEdge> edges;
  for (int v = 0; v < n; ++v) {
    for (int u : knn[static_cast<std::size_t>(v)]) {
      if (std::abs(ids[static_cast<std::size_t>(u)] - ids[static_cast<std::size_t>(v)]) >= bandwidth) continue;
      const int a = std::min(u, v);
      const int b = std::max(u, v);
      if (linked[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) continue;
      linked[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = 1;
      edges.push_back({a, b, 1.0 / (1.0 + l1_distance(features.row(a), features.row(b)))});
    }
  }
  return DocumentGraph(static_cast<std::size_t>(n), std::move(edges), std::move(ids));
}

std::vector<int> reverse_cuthill_mckee_ids(const FeatureMatrix& features, int h) {
  const auto knn = nearest_neighbors(features, h);
  const std::size_t n = knn.size();
  std::vector<std::vector<int>> adj(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (int u : knn[v]) {
      adj[v].push_back(u);
      adj[static_cast<std::size_t>(u)].push_back(static_cast<int>(v));
    }
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  auto by_degree = [&](int a, int b) {
    return std::pair(adj[static_cast<std::size_t>(a)].size(), a) <
           std::pair(adj[static_cast<std::size_t>(b)].size(), b);
  };

  std::vector<int> order;
  std::vector<char> seen(n, 0);
  while (order.size() < n) {
    int start = -1;
    for (std::size_t v = 0; v < n; ++v) {
      if (!seen[v] && (start < 0 || by_degree(static_cast<int>(v), start))) start = static_cast<int>(v);
    }
    std::deque<int> queue{start};
    seen[static_cast<std::size_t>(start)] = 1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      order.push_back(v);
      std::vector<int> next;
      for (int u : adj[static_cast<std::size_t>(v)]) {
        if (!seen[static_cast<std::size_t>(u)]) {
          seen[static_cast<std::size_t>(u)] = 1;
          next.push_back(u);
        }
      }
      std::sort(next.begin(), next.end(), by_degree);
      queue.insert(queue.end(), next.begin(), next.end());
    }
  }
  std::reverse(order.begin(), order.end());
  std::vector<int> ids(n);
  for (std::size_t pos = 0; pos < n; ++pos) ids[static_cast<std::size_t>(order[pos])] = static_cast<int>(pos) + 1;
  return ids;
}

double modularity(const DocumentGraph& graph, std::span<const int> assignment) {
  if (assignment.size() != graph.node_count()) {
    fail(ErrorCode::kInvalidArgument, "assignment size does not match graph");
  }
  const double w = graph.total_weight();
  if (w <= 0.0) return 0.0;
  int k = 0;
  for (int c : assignment) k = std::max(k, c + 1);
  std::vector<double> internal(static_cast<std::size_t>(k), 0.0);
  std::vector<double> degree(static_cast<std::size_t>(k), 0.0);
  for (const auto& e : graph.edges()) {
    if (assignment[static_cast<std::size_t>(e.u)] == assignment[static_cast<std::size_t>(e.v)]) {
      internal[static_cast<std::size_t>(assignment[static_cast<std::size_t>(e.u)])] += e.weight;
    }
  }
  for (std::size_t v = 0; v < assignment.size(); ++v) {
    degree[static_cast<std::size_t>(assignment[v])] += graph.strength(static_cast<int>(v));
  }
  double q = 0.0;
  for (std::size_t c = 0; c < internal.size(); ++c) {
    const double frac = degree[c] / (2.0 * w);
    q += internal[c] / w - frac * frac;
  }
  return q;
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }

 private:
  std::vector<int> parent_;
};

struct Individual {
  std::vector<int> genes;
  std::vector<int> labels;
  double fitness = 0.0;
};

void validate(const GaParams& p) {
  auto rate_ok = [](double r) { return r >= 0.0 && r <= 1.0; };
  if (p.population_size < 1 || p.generations < 1 || p.tournament_size < 1 || p.elite_count < 0 ||
      p.elite_count > p.population_size || !rate_ok(p.crossover_rate) || !rate_ok(p.mutation_rate)) {
    fail(ErrorCode::kInvalidArgument, "invalid GA parameters");
  }
}

}  // namespace

Clustering decode_genotype(std::span<const int> genes) {
  UnionFind uf(genes.size());
  for (std::size_t v = 0; v < genes.size(); ++v) uf.unite(static_cast<int>(v), genes[v]);
  std::vector<int> roots(genes.size());
  for (std::size_t v = 0; v < genes.size(); ++v) roots[v] = uf.find(static_cast<int>(v));
  return Clustering(roots);
}

GaResult ga_cluster(const DocumentGraph& graph, const GaParams& params) {
  validate(params);
  const std::size_t n = graph.node_count();
  if (n == 0) fail(ErrorCode::kTooFewDocuments, "graph has no nodes");

  std::mt19937_64 rng(params.rng_seed);
  auto pick_neighbor = [&](int v) {
    auto nb = graph.neighbors(v);
    if (nb.empty()) return v;
    std::uniform_int_distribution<std::size_t> d(0, nb.size() - 1);
    return nb[d(rng)].node;
  };
  auto evaluate = [&](Individual& ind) {
    Clustering c = decode_genotype(ind.genes);
    ind.labels.assign(c.assignment().begin(), c.assignment().end());
    ind.fitness = modularity(graph, ind.labels);
  };

  const auto pop_size = static_cast<std::size_t>(params.population_size);
  std::vector<Individual> population(pop_size);
  for (auto& ind : population) {
    ind.genes.resize(n);
    for (std::size_t v = 0; v < n; ++v) ind.genes[v] = pick_neighbor(static_cast<int>(v));
    evaluate(ind);
  }
  auto rank = [](std::vector<Individual>& pop) {
    std::stable_sort(pop.begin(), pop.end(),
                     [](const Individual& a, const Individual& b) { return a.fitness > b.fitness; });
  };
  rank(population);

  std::vector<int> mutable_nodes;
  for (std::size_t v = 0; v < n; ++v) {
    if (!graph.neighbors(static_cast<int>(v)).empty()) mutable_nodes.push_back(static_cast<int>(v));
  }

  GaResult result;
  result.best_fitness_per_generation.push_back(population.front().fitness);

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> any(0, pop_size - 1);
  auto tournament = [&]() -> const Individual& {
    std::size_t best = any(rng);
    for (int t = 1; t < params.tournament_size; ++t) best = std::min(best, any(rng));  // ranked order
    return population[best];
  };

  for (int gen = 0; gen < params.generations; ++gen) {
    std::vector<Individual> next;
    next.reserve(pop_size);
    for (int e = 0; e < params.elite_count; ++e) next.push_back(population[static_cast<std::size_t>(e)]);
    while (next.size() < pop_size) {
      const Individual& a = tournament();
      const Individual& b = tournament();
      Individual child;
      child.genes = a.genes;
      if (unit(rng) < params.crossover_rate) {
        for (std::size_t v = 0; v < n; ++v) {
          if (unit(rng) < 0.5) child.genes[v] = b.genes[v];
        }
      }
      if (!mutable_nodes.empty() && unit(rng) < params.mutation_rate) {
        std::uniform_int_distribution<std::size_t> d(0, mutable_nodes.size() - 1);
        const int v = mutable_nodes[d(rng)];
        child.genes[static_cast<std::size_t>(v)] = pick_neighbor(v);
      }
      evaluate(child);
      next.push_back(std::move(child));
    }
    population = std::move(next);
    rank(population);
    result.best_fitness_per_generation.push_back(population.front().fitness);
  }

  result.clustering = Clustering(population.front().labels);
  result.fitness = population.front().fitness;
  return result;
}

Clustering refine_merge(const Clustering& clustering, const FeatureMatrix& features, int k_target) {
  if (clustering.size() != features.rows()) {
    fail(ErrorCode::kInvalidArgument, "clustering and feature matrix sizes differ");
  }
  if (k_target < 1 || k_target > clustering.k()) {
    fail(ErrorCode::kInvalidTarget, "cannot merge " + std::to_string(clustering.k()) +
                                        " clusters down to " + std::to_string(k_target));
  }
  auto groups = clustering.members();
  const std::size_t k = groups.size();
  std::vector<std::vector<double>> dist(k, std::vector<double>(k, 0.0));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      double d = 0.0;
      for (int x : groups[a]) {
        for (int y : groups[b]) {
          d = std::max(d, l1_distance(features.row(static_cast<std::size_t>(x)), features.row(static_cast<std::size_t>(y))));
        }
      }
      dist[a][b] = dist[b][a] = d;
    }
  }

  std::vector<char> alive(k, 1);
  std::vector<int> owner(k);
  std::iota(owner.begin(), owner.end(), 0);
  for (std::size_t remaining = k; remaining > static_cast<std::size_t>(k_target); --remaining) {
    std::size_t best_a = 0, best_b = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < k; ++a) {
      if (!alive[a]) continue;
      for (std::size_t b = a + 1; b < k; ++b) {
        if (alive[b] && dist[a][b] < best) {
          best = dist[a][b];
          best_a = a;
          best_b = b;
        }
      }
    }
    alive[best_b] = 0;
    owner[best_b] = static_cast<int>(best_a);
    for (std::size_t c = 0; c < k; ++c) {
      dist[best_a][c] = dist[c][best_a] = std::max(dist[best_a][c], dist[best_b][c]);
    }
  }

  auto root = [&](int c) {
    while (owner[static_cast<std::size_t>(c)] != c) c = owner[static_cast<std::size_t>(c)];
    return c;
  };
  std::vector<int> labels(clustering.size());
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = root(clustering[i]);
  return Clustering(labels);
}

}  // namespace scriptid
