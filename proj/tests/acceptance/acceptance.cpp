// Acceptance suite: one PASS/FAIL line per criterion. Tolerances and time
// limits are fixed here and must not be loosened.
//
// usage: acceptance <path-to-cli> [criterion...]

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "core/baselines.hpp"
#include "core/evaluation.hpp"
#include "core/gaicda_cluster.hpp"
#include "core/pipeline.hpp"
#include "core/textline_segmenter.hpp"
#include "core/texture_features.hpp"
#include "support/oracles.hpp"

using namespace scriptid;
namespace fs = std::filesystem;

namespace {

constexpr double kRunLengthTolerance = 1e-12;  // relative once |value| > 1
constexpr double kAnchorTolerance = 1e-4;
constexpr double kModularityTolerance = 1e-9;
constexpr double kObjectiveTolerance = 1e-9;  // relative once |value| > 1
constexpr int kSeeds = 50;

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit_s;  // 0 = none
  std::function<Verdict()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

bool close_rel(double got, double want, double tol) {
  return std::fabs(got - want) <= tol * std::max(1.0, std::fabs(want));
}

std::vector<int> labels_of(const Clustering& c) { return {c.assignment().begin(), c.assignment().end()}; }

// ---- 1 --------------------------------------------------------------------

Verdict run_length_oracle() {
  std::mt19937_64 rng(20240101);
  std::uniform_int_distribution<std::size_t> len(1, 200);
  int bad = 0;
  for (int t = 0; t < 10000; ++t) {
    const auto s = oracle::random_symbols(rng, len(rng));
    const auto m = run_length_matrix(CodedSequence(s));
    const auto ref = oracle::run_length(s);
    bool ok = m.max_run_length() == ref.max_run && static_cast<double>(m.run_count()) == ref.runs &&
              static_cast<double>(m.pixel_count()) == ref.pixels;
    for (int g = 0; g < 4 && ok; ++g)
      for (int j = 1; j <= ref.max_run; ++j)
        ok = ok && static_cast<double>(m.count(g, j)) == ref.p[static_cast<std::size_t>(g) + 1][static_cast<std::size_t>(j)];
    if (ok) {
      const auto got = run_length_features(m).as_array();
      const auto want = oracle::run_length_features(ref);
      for (std::size_t i = 0; i < 11; ++i) ok = ok && close_rel(got[i], want[i], kRunLengthTolerance);
    }
    bad += !ok;
  }
  return {bad == 0, fmt("%d/10000 sequences disagree", bad)};
}

// ---- 2 --------------------------------------------------------------------

Verdict albp_exhaustive() {
  int bad = 0;
  bool constants_ok = true;
  for (int code = 0; code < 1024; ++code) {
    oracle::Symbols s(5);
    for (int i = 0; i < 5; ++i) s[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((code >> (2 * i)) & 3);
    const auto want = oracle::albp_counts(s);
    const auto counts = albp_histogram(CodedSequence(s), AlbpMode::kCounts);
    const auto norm = albp_histogram(CodedSequence(s));
    bool ok = counts.valid_positions == 2;
    for (std::size_t b = 0; b < 16; ++b) ok = ok && counts.bins[b] == want[b] && norm.bins[b] == want[b] / 2.0;
    bad += !ok;
    if (std::all_of(s.begin(), s.end(), [&](auto v) { return v == s[0]; })) {
      constants_ok = constants_ok && norm.bins[15] == 1.0;
    }
  }
  return {bad == 0 && constants_ok, fmt("%d/1024 sequences disagree; constant sequences in bin 15: %s", bad, constants_ok ? "yes" : "no")};
}

// ---- 3, 4 -----------------------------------------------------------------

ConfusionMatrix anchor_matrix() {
  ConfusionMatrix cm(3, 3);  // rows cyrillic, angular, round
  cm.at(0, 0) = 5;
  cm.at(1, 1) = 10;
  cm.at(2, 1) = 2;
  cm.at(2, 2) = 3;
  return cm;
}

Verdict nmi_anchor() {
  const double v = nmi(anchor_matrix());
  return {std::fabs(v - 0.7782) <= kAnchorTolerance, fmt("nmi = %.6f", v)};
}

Verdict prf_anchor() {
  const auto cm = anchor_matrix();
  const auto map = majority_map(cm);
  const double want[3][3] = {{1.0, 1.0, 1.0}, {0.8333, 1.0000, 0.9091}, {1.0000, 0.6000, 0.7500}};
  bool ok = true;
  std::string detail;
  for (int c = 0; c < 3; ++c) {
    const auto s = precision_recall_f(cm, map, c);
    ok = ok && std::fabs(s.precision - want[c][0]) <= kAnchorTolerance &&
         std::fabs(s.recall - want[c][1]) <= kAnchorTolerance && std::fabs(s.f_measure - want[c][2]) <= kAnchorTolerance;
    detail += fmt("%s(%.4f %.4f %.4f) ", c == 0 ? "cyrillic" : c == 1 ? "angular" : "round", s.precision, s.recall, s.f_measure);
  }
  return {ok, detail};
}

// ---- 5, 6 -----------------------------------------------------------------

struct MethodScores {
  std::vector<double> nmi[3];  // gaicda, kmeans, linkage
};

MethodScores synthetic_runs(const std::string& preset, bool baselines) {
  MethodScores out;
  for (int seed = 1; seed <= kSeeds; ++seed) {
    const auto ds = preset_dataset(preset, static_cast<std::uint64_t>(seed));
    FeatureTable table;
    std::vector<int> truth;
    for (const auto& d : ds.documents) {
      table.add(d.id, feature_vector(d.sequence));
      truth.push_back(static_cast<int>(std::find(ds.class_names.begin(), ds.class_names.end(), d.class_name) -
                                       ds.class_names.begin()));
    }
    const ClusterMethod methods[3] = {ClusterMethod::kGaIcda, ClusterMethod::kKMeans, ClusterMethod::kAverageLinkage};
    for (int m = 0; m < (baselines ? 3 : 1); ++m) {
      ClusterSettings s = cluster_profile(preset);
      s.method = methods[m];
      s.k_target = 3;
      s.ga.rng_seed = static_cast<std::uint64_t>(seed);
      const auto outcome = cluster_features(table, s);
      out.nmi[m].push_back(nmi(truth, labels_of(outcome.record.clustering)));
    }
  }
  return out;
}

double mean(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

Verdict separated_dataset() {
  const auto r = synthetic_runs("db1", false);
  const int perfect = static_cast<int>(std::count_if(r.nmi[0].begin(), r.nmi[0].end(), [](double v) { return v >= 1.0 - 1e-12; }));
  const double m = mean(r.nmi[0]);
  return {perfect >= 45 && m >= 0.98, fmt("NMI = 1 in %d/%d seeds, mean NMI %.4f", perfect, kSeeds, m)};
}

Verdict transitional_dataset() {
  const auto r = synthetic_runs("db2", true);
  const double ga = mean(r.nmi[0]), km = mean(r.nmi[1]), al = mean(r.nmi[2]);
  return {ga > km && ga > al, fmt("mean NMI: GA-ICDA %.4f, K-Means %.4f, average linkage %.4f", ga, km, al)};
}

// ---- 7 --------------------------------------------------------------------

DocumentGraph planted_blocks(std::mt19937_64& rng, int blocks, int per_block) {
  std::uniform_real_distribution<double> strong(0.5, 1.0), weak(0.01, 0.2);
  std::bernoulli_distribution inside(0.85), bridge(0.2);
  const int n = blocks * per_block;
  std::vector<WeightedEdge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (u / per_block == v / per_block) {
        if (inside(rng)) edges.push_back({u, v, strong(rng)});
      } else if (bridge(rng)) {
        edges.push_back({u, v, weak(rng)});
      }
    }
  return DocumentGraph(static_cast<std::size_t>(n), edges);
}

FeatureMatrix random_matrix(std::mt19937_64& rng, std::size_t n, std::size_t d) {
  std::normal_distribution<double> g(0.0, 1.0);
  FeatureMatrix m(n, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = g(rng);
  return m;
}

oracle::Points to_points(const FeatureMatrix& m) {
  oracle::Points p;
  for (std::size_t i = 0; i < m.rows(); ++i) p.emplace_back(m.row(i).begin(), m.row(i).end());
  return p;
}

Verdict clustering_oracles() {
  std::mt19937_64 rng(777);

  int ga_hits = 0;
  for (int seed = 1; seed <= kSeeds; ++seed) {
    const auto g = planted_blocks(rng, 3, 4);
    std::vector<oracle::Edge> edges;
    for (const auto& e : g.edges()) edges.push_back({e.u, e.v, e.weight});
    const double best = oracle::best_modularity(oracle::dense_adjacency(12, edges), 4);
    GaParams p;
    p.rng_seed = static_cast<std::uint64_t>(seed);
    ga_hits += ga_cluster(g, p).fitness >= best - kModularityTolerance;
  }

  int merge_bad = 0;
  std::uniform_int_distribution<int> lab(0, 7);
  for (int t = 0; t < 200; ++t) {
    const auto f = random_matrix(rng, 24, 5);
    std::vector<int> l(24);
    for (int i = 0; i < 24; ++i) l[static_cast<std::size_t>(i)] = i < 8 ? i : lab(rng);
    const Clustering start(l);
    merge_bad += labels_of(refine_merge(start, f, 3)) != oracle::complete_linkage(to_points(f), labels_of(start), 3);
  }

  int km_bad = 0;
  for (int t = 0; t < 200; ++t) {
    const auto f = random_matrix(rng, static_cast<std::size_t>(2 + t % 7), 4);
    const auto r = kmeans(f, 2, static_cast<std::uint64_t>(t));
    km_bad += !close_rel(r.objective, oracle::best_two_partition(to_points(f)), kObjectiveTolerance);
  }

  return {ga_hits >= 45 && merge_bad == 0 && km_bad == 0,
          fmt("GA at optimum in %d/%d seeds; refine_merge mismatches %d/200; k-means off optimum %d/200", ga_hits, kSeeds,
              merge_bad, km_bad)};
}

// ---- 8 --------------------------------------------------------------------

std::vector<oracle::Box> boxes_of(const Segmentation& seg, int dx, int dy) {
  std::vector<oracle::Box> out;
  for (const auto& b : seg.blobs) out.push_back({b.bbox.x_min - dx, b.bbox.y_min - dy, b.bbox.x_max - dx, b.bbox.y_max - dy, b.area});
  return out;
}

Verdict segmentation_properties() {
  std::mt19937_64 rng(4242);
  std::uniform_int_distribution<int> pad(0, 6);
  int planted_bad = 0, sum_bad = 0, pad_bad = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto planted = oracle::planted_rectangles(rng, 10);
    const BinaryImage img(planted.width, planted.height, planted.pixels);

    const auto profile = horizontal_projection(img);
    std::size_t total = 0;
    for (auto v : profile) total += v;
    sum_bad += total != img.ink_count();

    const auto seg = segment(img, {1, 1});
    auto got = boxes_of(seg, 0, 0);
    auto sorted = got;
    std::sort(sorted.begin(), sorted.end());
    planted_bad += sorted != planted.boxes ||
                   sorted != oracle::flood_fill_boxes(planted.width, planted.height, planted.pixels);

    const int l = pad(rng), tp = pad(rng), r = pad(rng), b = pad(rng);
    const auto padded = segment(img.padded(l, tp, r, b), {1, 1});
    bool same = boxes_of(padded, l, tp) == got && padded.bands.size() == seg.bands.size();
    for (std::size_t i = 0; same && i < seg.blobs.size(); ++i) same = padded.blobs[i].line_index == seg.blobs[i].line_index;
    pad_bad += !same;
  }
  return {planted_bad == 0 && sum_bad == 0 && pad_bad == 0,
          fmt("failures over 1000 images: planted %d, projection sum %d, padding %d", planted_bad, sum_bad, pad_bad)};
}

// ---- 9 --------------------------------------------------------------------

std::string cli_path;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(const std::string& cmd) { return std::system((cmd + " >/dev/null 2>&1").c_str()); }

Verdict cli_determinism() {
  const fs::path work = fs::temp_directory_path() / ("scriptid_acceptance_" + std::to_string(::getpid()));
  fs::remove_all(work);
  fs::create_directories(work);
  const auto q = [](const fs::path& p) { return "'" + p.string() + "'"; };
  if (run(q(cli_path) + " synth --preset db2 --seed 5 --out " + q(work / "data")) != 0) {
    return {false, "synth failed"};
  }
  {
    std::ofstream cfg(work / "config.json");
    cfg << R"({"input": ")" << (work / "data").string() << R"(", "profile": "db2", "k": 3, "runs": 3})";
  }
  for (const char* out : {"a", "b"}) {
    if (run(q(cli_path) + " pipeline --config " + q(work / "config.json") + " --seed 9 --out " + q(work / out)) != 0) {
      return {false, "pipeline failed"};
    }
  }
  std::string detail;
  bool ok = true;
  for (const char* f : {"features.csv", "clustering.json", "report.json", "report.txt"}) {
    const auto a = slurp(work / "a" / f);
    const bool same = !a.empty() && a == slurp(work / "b" / f);
    ok = ok && same;
    detail += fmt("%s %s; ", f, same ? "identical" : "DIFFERS");
  }
  fs::remove_all(work);
  return {ok, detail};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: %s <path-to-cli> [criterion...]\n", argv[0]);
    return 2;
  }
  cli_path = argv[1];
  std::vector<int> only;
  for (int i = 2; i < argc; ++i) only.push_back(std::atoi(argv[i]));

  const std::vector<Criterion> criteria = {
      {1, "run-length matrix and features vs brute-force oracle", 10.0, run_length_oracle},
      {2, "ALBP exhaustive over length-5 sequences", 1.0, albp_exhaustive},
      {3, "NMI anchor 0.7782", 0.0, nmi_anchor},
      {4, "precision/recall/F anchors", 0.0, prf_anchor},
      {5, "separated 5/5/5 synthetic set, GA-ICDA k=3", 60.0, separated_dataset},
      {6, "transitional 20-document set, GA-ICDA vs baselines", 120.0, transitional_dataset},
      {7, "clustering oracles (GA, refine_merge, k-means)", 0.0, clustering_oracles},
      {8, "segmentation properties over random images", 10.0, segmentation_properties},
      {9, "pipeline CLI byte-identical reruns", 0.0, cli_determinism},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.time_limit_s > 0 && secs >= c.time_limit_s) {
      v.pass = false;
      v.detail += fmt(" [over time limit %.0f s]", c.time_limit_s);
    }
    std::printf("[%s] %d. %s: %s (%.2f s)\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !v.pass;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
