#include "core/baselines.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "core/error.hpp"

namespace scriptid {

namespace {

void check_k(const FeatureMatrix& features, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > features.rows()) {
    fail(ErrorCode::kInvalidK, "k=" + std::to_string(k) + " must lie in [1, " +
                                   std::to_string(features.rows()) + "]");
  }
}

std::vector<std::size_t> plus_plus_seeds(const FeatureMatrix& x, int k, std::mt19937_64& rng) {
  const std::size_t n = x.rows();
  std::vector<std::size_t> seeds;
  std::vector<char> chosen(n, 0);
  std::vector<double> d2(n, std::numeric_limits<double>::infinity());
  std::uniform_int_distribution<std::size_t> first(0, n - 1);
  seeds.push_back(first(rng));
  chosen[seeds.back()] = 1;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  while (seeds.size() < static_cast<std::size_t>(k)) {
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], squared_euclidean(x.row(i), x.row(seeds.back())));
      total += d2[i];
    }
    std::size_t pick = n;
    if (total > 0.0) {
      double target = unit(rng) * total;
      for (std::size_t i = 0; i < n; ++i) {
        if (d2[i] <= 0.0) continue;
        pick = i;
        target -= d2[i];
        if (target <= 0.0) break;
      }
    } else {
      // every point coincides with a seed; take an unused one
      std::vector<std::size_t> unused;
      for (std::size_t i = 0; i < n; ++i) if (!chosen[i]) unused.push_back(i);
      std::uniform_int_distribution<std::size_t> d(0, unused.size() - 1);
      pick = unused[d(rng)];
    }
    seeds.push_back(pick);
    chosen[pick] = 1;
  }
  return seeds;
}

KMeansResult lloyd(const FeatureMatrix& x, int k, std::vector<std::size_t> seeds) {
  const std::size_t n = x.rows();
  const std::size_t dims = x.cols();
  const auto kk = static_cast<std::size_t>(k);
  FeatureMatrix centers(kk, dims);
  for (std::size_t c = 0; c < kk; ++c) {
    std::copy(x.row(seeds[c]).begin(), x.row(seeds[c]).end(), centers.row(c).begin());
  }
  std::vector<int> assign(n, -1);
  for (int iter = 0; iter < 300; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      int best = 0;
      double best_d = squared_euclidean(x.row(i), centers.row(0));
      for (std::size_t c = 1; c < kk; ++c) {
        double d = squared_euclidean(x.row(i), centers.row(c));
        if (d < best_d) {
          best_d = d;
          best = static_cast<int>(c);
        }
      }
      if (assign[i] != best) {
        assign[i] = best;
        changed = true;
      }
    }
    std::vector<std::size_t> count(kk, 0);
    FeatureMatrix sums(kk, dims);
    for (std::size_t i = 0; i < n; ++i) {
      auto c = static_cast<std::size_t>(assign[i]);
      ++count[c];
      for (std::size_t d = 0; d < dims; ++d) sums(c, d) += x(i, d);
    }
    for (std::size_t c = 0; c < kk; ++c) {
      if (count[c] > 0) {
        for (std::size_t d = 0; d < dims; ++d) centers(c, d) = sums(c, d) / static_cast<double>(count[c]);
        continue;
      }
      // empty cluster: steal the point farthest from its own centroid
      std::size_t far = n;
      double far_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        auto own = static_cast<std::size_t>(assign[i]);
        if (count[own] < 2) continue;
        double d = squared_euclidean(x.row(i), centers.row(own));
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      if (far == n) continue;
      --count[static_cast<std::size_t>(assign[far])];
      assign[far] = static_cast<int>(c);
      count[c] = 1;
      std::copy(x.row(far).begin(), x.row(far).end(), centers.row(c).begin());
      changed = true;
    }
    if (!changed) break;
  }
  KMeansResult r;
  for (std::size_t i = 0; i < n; ++i) {
    r.objective += squared_euclidean(x.row(i), centers.row(static_cast<std::size_t>(assign[i])));
  }
  r.clustering = Clustering(assign);
  return r;
}

}  // namespace

KMeansResult kmeans(const FeatureMatrix& features, int k, std::uint64_t rng_seed, int restarts) {
  check_k(features, k);
  if (restarts < 1) fail(ErrorCode::kInvalidArgument, "restarts must be >= 1");
  std::mt19937_64 rng(rng_seed);
  KMeansResult best;
  best.objective = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    auto run = lloyd(features, k, plus_plus_seeds(features, k, rng));
    if (run.objective < best.objective) best = std::move(run);
  }
  return best;
}

LinkageResult average_linkage(const FeatureMatrix& features, int k) {
  check_k(features, k);
  const std::size_t n = features.rows();
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      dist[a][b] = dist[b][a] = l1_distance(features.row(a), features.row(b));
    }
  }
  std::vector<std::size_t> size(n, 1);
  std::vector<char> alive(n, 1);
  std::vector<int> owner(n);
  std::iota(owner.begin(), owner.end(), 0);

  LinkageResult result;
  for (std::size_t remaining = n; remaining > static_cast<std::size_t>(k); --remaining) {
    std::size_t ba = 0, bb = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < n; ++a) {
      if (!alive[a]) continue;
      for (std::size_t b = a + 1; b < n; ++b) {
        if (alive[b] && dist[a][b] < best) {
          best = dist[a][b];
          ba = a;
          bb = b;
        }
      }
    }
    result.merges.push_back({static_cast<int>(ba), static_cast<int>(bb), best});
    // Lance-Williams update for the unweighted average
    const double sa = static_cast<double>(size[ba]);
    const double sb = static_cast<double>(size[bb]);
    for (std::size_t c = 0; c < n; ++c) {
      if (!alive[c] || c == ba || c == bb) continue;
      dist[ba][c] = dist[c][ba] = (sa * dist[ba][c] + sb * dist[bb][c]) / (sa + sb);
    }
    size[ba] += size[bb];
    alive[bb] = 0;
    owner[bb] = static_cast<int>(ba);
  }
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    int c = static_cast<int>(i);
    while (owner[static_cast<std::size_t>(c)] != c) c = owner[static_cast<std::size_t>(c)];
    labels[i] = c;
  }
  result.clustering = Clustering(labels);
  return result;
}

}  // namespace scriptid
