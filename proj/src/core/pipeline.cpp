#include "core/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <exception>
#include <map>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "core/baselines.hpp"
#include "core/error.hpp"

namespace fs = std::filesystem;

namespace scriptid {

std::string_view method_name(ClusterMethod m) {
  switch (m) {
    case ClusterMethod::kGaIcda: return "gaicda";
    case ClusterMethod::kKMeans: return "kmeans";
    case ClusterMethod::kAverageLinkage: return "average_linkage";
  }
  return "unknown";
}

ClusterSettings cluster_profile(const std::string& name) {
  ClusterSettings s;
  if (name == "db1") {
    s.h = 15;
    s.bandwidth = 4;
  } else if (name == "db2") {
    s.h = 20;
    s.bandwidth = 5;
  } else {
    fail(ErrorCode::kConfig, "unknown parameter profile '" + name + "' (expected db1 or db2)");
  }
  return s;
}

namespace {

bool albp_is_empty(std::span<const double> row) {
  return std::all_of(row.begin() + kRunLengthFeatureCount, row.end(), [](double v) { return v == 0.0; });
}

Json settings_json(const ClusterSettings& s, int h_used) {
  Json p;
  p["method"] = method_name(s.method);
  p["h"] = h_used;
  p["T"] = s.bandwidth;
  p["k"] = s.k_target;
  p["seed"] = s.ga.rng_seed;
  p["ordering"] = s.ordering == NodeOrdering::kInput ? "input" : "rcm";
  if (s.method == ClusterMethod::kGaIcda) {
    p["population_size"] = s.ga.population_size;
    p["generations"] = s.ga.generations;
    p["crossover_rate"] = s.ga.crossover_rate;
    p["mutation_rate"] = s.ga.mutation_rate;
    p["elite_count"] = s.ga.elite_count;
    p["tournament_size"] = s.ga.tournament_size;
    p["fitness"] = "ga_modularity";
  } else {
    if (s.method == ClusterMethod::kKMeans) p["restarts"] = s.restarts;
    p["fitness"] = "graph_modularity";
  }
  p["include_degenerate"] = s.include_degenerate;
  return p;
}

}  // namespace

ClusterOutcome cluster_features(const FeatureTable& table, const ClusterSettings& settings) {
  ClusterOutcome out;
  ClusteringRecord& rec = out.record;
  rec.method = method_name(settings.method);

  FeatureMatrix selected;
  for (std::size_t r = 0; r < table.ids.size(); ++r) {
    if (!settings.include_degenerate && albp_is_empty(table.values.row(r))) {
      rec.excluded.push_back(table.ids[r]);
      continue;
    }
    rec.ids.push_back(table.ids[r]);
    selected.append_row(table.values.row(r));
  }
  if (!rec.excluded.empty()) {
    out.warnings.push_back(std::to_string(rec.excluded.size()) +
                           " degenerate document(s) excluded from clustering");
  }
  const int n = static_cast<int>(rec.ids.size());
  if (n < 2) fail(ErrorCode::kTooFewDocuments, "clustering needs at least 2 usable documents, got " + std::to_string(n));
  if (settings.h < 1) fail(ErrorCode::kConfig, "h must be >= 1");
  if (settings.bandwidth < 1) fail(ErrorCode::kConfig, "T must be >= 1");
  if (settings.k_target < 1) fail(ErrorCode::kConfig, "k must be >= 1");

  const FeatureMatrix x = standardize(selected);
  const int h = std::min(settings.h, n - 1);
  if (h != settings.h) {
    out.warnings.push_back("h=" + std::to_string(settings.h) + " exceeds n-1; clamped to " + std::to_string(h));
  }
  const std::vector<int> ids =
      settings.ordering == NodeOrdering::kReverseCuthillMcKee ? reverse_cuthill_mckee_ids(x, h) : std::vector<int>{};
  const DocumentGraph graph = build_graph(x, h, settings.bandwidth, ids);
  if (graph.isolated_count() > 0) {
    out.warnings.push_back("DegenerateGraph: " + std::to_string(graph.isolated_count()) +
                           " isolated node(s) form singleton clusters");
  }

  switch (settings.method) {
    case ClusterMethod::kGaIcda: {
      GaResult ga = ga_cluster(graph, settings.ga);
      rec.fitness = ga.fitness;
      if (ga.clustering.k() > settings.k_target) {
        rec.clustering = refine_merge(ga.clustering, x, settings.k_target);
      } else {
        if (ga.clustering.k() < settings.k_target) {
          out.warnings.push_back("genetic search found " + std::to_string(ga.clustering.k()) +
                                 " cluster(s), fewer than k=" + std::to_string(settings.k_target));
        }
        rec.clustering = std::move(ga.clustering);
      }
      break;
    }
    case ClusterMethod::kKMeans:
      rec.clustering = kmeans(x, settings.k_target, settings.ga.rng_seed, settings.restarts).clustering;
      rec.fitness = modularity(graph, rec.clustering.assignment());
      break;
    case ClusterMethod::kAverageLinkage:
      rec.clustering = average_linkage(x, settings.k_target).clustering;
      rec.fitness = modularity(graph, rec.clustering.assignment());
      break;
  }
  rec.params = settings_json(settings, h);
  return out;
}

EvalReport evaluate_record(const ClusteringRecord& record, const LabelTable& labels) {
  const auto names = labels.class_names();
  std::unordered_map<std::string, int> class_index;
  for (std::size_t i = 0; i < names.size(); ++i) class_index[names[i]] = static_cast<int>(i);
  std::unordered_map<std::string, int> truth_of;
  for (std::size_t i = 0; i < labels.ids.size(); ++i) truth_of[labels.ids[i]] = class_index.at(labels.classes[i]);

  std::vector<int> truth;
  truth.reserve(record.ids.size());
  for (const auto& id : record.ids) {
    auto it = truth_of.find(id);
    if (it == truth_of.end()) fail(ErrorCode::kUnknownClass, "no ground-truth label for document '" + id + "'");
    truth.push_back(it->second);
  }
  return evaluate(truth, record.clustering.assignment(), names);
}

// ---------------------------------------------------------------------------
// configuration

namespace {

template <class T>
T get_as(const Json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kConfig, std::string("config key '") + key + "': " + e.what());
  }
}

void require_range(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::kConfig, what);
}

SyntheticProfile profile_from_json(const Json& j) {
  SyntheticProfile p;
  p.class_name = get_as<std::string>(j, "class");
  auto probs = get_as<std::vector<double>>(j, "probs");
  if (probs.size() != 4) fail(ErrorCode::kInvalidProfile, "profile probs must have 4 entries");
  std::copy(probs.begin(), probs.end(), p.code_probs.begin());
  if (j.contains("persistence")) p.persistence = get_as<double>(j, "persistence");
  if (j.contains("min_length")) p.min_length = get_as<int>(j, "min_length");
  if (j.contains("max_length")) p.max_length = get_as<int>(j, "max_length");
  validate_profile(p);
  return p;
}

}  // namespace

PipelineConfig config_from_json(const Json& j) {
  if (!j.is_object()) fail(ErrorCode::kConfig, "config must be a JSON object");
  static const std::unordered_set<std::string> known = {
      "input", "input_type", "labels", "clustering", "out", "ink", "min_gap", "min_blob_area",
      "flat_tolerance", "eps_fraction", "albp", "profile", "h", "T", "k", "seed", "restarts",
      "method", "ordering", "include_degenerate", "runs", "ga", "synth"};
  for (const auto& [key, _] : j.items()) {
    if (!known.contains(key)) fail(ErrorCode::kConfig, "unknown config key '" + key + "'");
  }

  PipelineConfig c;
  if (j.contains("profile")) c.cluster = cluster_profile(get_as<std::string>(j, "profile"));
  if (j.contains("input")) c.input = get_as<std::string>(j, "input");
  if (j.contains("input_type")) {
    auto t = get_as<std::string>(j, "input_type");
    require_range(t == "images" || t == "coded", "input_type must be 'images' or 'coded'");
    c.input_type = t == "images" ? InputType::kImages : InputType::kCoded;
    c.input_type_given = true;
  }
  if (j.contains("labels")) c.labels = get_as<std::string>(j, "labels");
  if (j.contains("clustering")) c.clustering = get_as<std::string>(j, "clustering");
  if (j.contains("out")) c.out = get_as<std::string>(j, "out");
  if (j.contains("ink")) {
    auto ink = get_as<std::string>(j, "ink");
    require_range(ink == "dark" || ink == "light", "ink must be 'dark' or 'light'");
    c.ink = ink == "dark" ? InkPolarity::kDark : InkPolarity::kLight;
  }
  if (j.contains("min_gap")) c.segment.min_gap = get_as<int>(j, "min_gap");
  if (j.contains("min_blob_area")) c.segment.min_blob_area = get_as<std::size_t>(j, "min_blob_area");
  if (j.contains("flat_tolerance")) c.mapper.flat_tolerance = get_as<double>(j, "flat_tolerance");
  if (j.contains("eps_fraction")) c.mapper.eps_fraction = get_as<double>(j, "eps_fraction");
  if (j.contains("albp")) {
    auto a = get_as<std::string>(j, "albp");
    require_range(a == "normalized" || a == "counts", "albp must be 'normalized' or 'counts'");
    c.albp = a == "counts" ? AlbpMode::kCounts : AlbpMode::kNormalized;
  }
  if (j.contains("h")) c.cluster.h = get_as<int>(j, "h");
  if (j.contains("T")) c.cluster.bandwidth = get_as<int>(j, "T");
  if (j.contains("k")) c.cluster.k_target = get_as<int>(j, "k");
  if (j.contains("seed")) c.seed = get_as<std::uint64_t>(j, "seed");
  if (j.contains("restarts")) c.cluster.restarts = get_as<int>(j, "restarts");
  if (j.contains("method")) {
    auto m = get_as<std::string>(j, "method");
    if (m == "gaicda") c.cluster.method = ClusterMethod::kGaIcda;
    else if (m == "kmeans") c.cluster.method = ClusterMethod::kKMeans;
    else if (m == "average_linkage" || m == "linkage") c.cluster.method = ClusterMethod::kAverageLinkage;
    else fail(ErrorCode::kConfig, "method must be gaicda, kmeans or average_linkage");
  }
  if (j.contains("ordering")) {
    auto o = get_as<std::string>(j, "ordering");
    require_range(o == "input" || o == "rcm", "ordering must be 'input' or 'rcm'");
    c.cluster.ordering = o == "rcm" ? NodeOrdering::kReverseCuthillMcKee : NodeOrdering::kInput;
  }
  if (j.contains("include_degenerate")) c.cluster.include_degenerate = get_as<bool>(j, "include_degenerate");
  if (j.contains("runs")) c.runs = get_as<int>(j, "runs");
  if (j.contains("ga")) {
    const Json& g = j["ga"];
    auto& ga = c.cluster.ga;
    if (g.contains("population_size")) ga.population_size = get_as<int>(g, "population_size");
    if (g.contains("generations")) ga.generations = get_as<int>(g, "generations");
    if (g.contains("crossover_rate")) ga.crossover_rate = get_as<double>(g, "crossover_rate");
    if (g.contains("mutation_rate")) ga.mutation_rate = get_as<double>(g, "mutation_rate");
    if (g.contains("elite_count")) ga.elite_count = get_as<int>(g, "elite_count");
    if (g.contains("tournament_size")) ga.tournament_size = get_as<int>(g, "tournament_size");
  }
  if (j.contains("synth")) {
    const Json& s = j["synth"];
    if (s.contains("preset")) c.synth_preset = get_as<std::string>(s, "preset");
    if (s.contains("render")) c.synth_render = get_as<bool>(s, "render");
    if (s.contains("profiles")) {
      for (const auto& p : s["profiles"]) {
        c.synth_profiles.push_back(profile_from_json(p));
        c.synth_counts.push_back(p.contains("count") ? get_as<int>(p, "count") : 5);
      }
    }
  }

  c.cluster.ga.rng_seed = c.seed;
  require_range(c.segment.min_gap >= 1, "min_gap must be >= 1");
  require_range(c.mapper.flat_tolerance >= 0.0 && c.mapper.flat_tolerance < 1.0, "flat_tolerance must lie in [0, 1)");
  require_range(c.mapper.eps_fraction >= 0.0 && c.mapper.eps_fraction < 0.5, "eps_fraction must lie in [0, 0.5)");
  require_range(c.cluster.h >= 1, "h must be >= 1");
  require_range(c.cluster.bandwidth >= 1, "T must be >= 1");
  require_range(c.cluster.k_target >= 1, "k must be >= 1");
  require_range(c.cluster.restarts >= 1, "restarts must be >= 1");
  require_range(c.runs >= 1, "runs must be >= 1");
  const auto& ga = c.cluster.ga;
  require_range(ga.population_size >= 1 && ga.generations >= 1 && ga.tournament_size >= 1 &&
                    ga.elite_count >= 0 && ga.elite_count <= ga.population_size,
                "GA sizes must be >= 1 and elite_count <= population_size");
  require_range(ga.crossover_rate >= 0.0 && ga.crossover_rate <= 1.0 && ga.mutation_rate >= 0.0 &&
                    ga.mutation_rate <= 1.0,
                "GA rates must lie in [0, 1]");
  return c;
}

// ---------------------------------------------------------------------------
// stages

namespace {

struct InputDocument {
  std::string id;
  fs::path path;
};

bool has_extension(const fs::path& p, std::initializer_list<const char*> exts) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return std::any_of(exts.begin(), exts.end(), [&](const char* e) { return ext == e; });
}

std::vector<InputDocument> list_documents(const PipelineConfig& c) {
  if (c.input.empty()) fail(ErrorCode::kConfig, "no --input given");
  if (!fs::exists(c.input)) fail(ErrorCode::kConfig, "input path does not exist: " + c.input.string());
  std::vector<InputDocument> docs;
  auto accept = [&](const fs::path& p) {
    return c.input_type == InputType::kImages ? has_extension(p, {".pgm", ".png"}) : has_extension(p, {".txt"});
  };
  if (fs::is_regular_file(c.input)) {
    docs.push_back({c.input.stem().string(), c.input});
  } else {
    for (const auto& entry : fs::directory_iterator(c.input)) {
      if (entry.is_regular_file() && accept(entry.path())) docs.push_back({entry.path().stem().string(), entry.path()});
    }
    std::sort(docs.begin(), docs.end(), [](const auto& a, const auto& b) { return a.path.filename() < b.path.filename(); });
  }
  std::unordered_set<std::string> seen;
  for (const auto& d : docs) {
    if (!seen.insert(d.id).second) fail(ErrorCode::kParse, "duplicate document id '" + d.id + "'");
  }
  if (docs.empty()) fail(ErrorCode::kEmptyDocument, "no input documents found in " + c.input.string());
  return docs;
}

// Runs fn over every index on a small worker pool. The first failure in
// document order is rethrown, annotated with the stage and document id.
template <class Result, class Fn>
std::vector<Result> for_each_document(const std::string& stage, const std::vector<InputDocument>& docs, Fn fn) {
  std::vector<std::optional<Result>> results(docs.size());
  std::vector<std::exception_ptr> errors(docs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < docs.size(); i = next++) {
      try {
        results[i] = fn(docs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), static_cast<unsigned>(docs.size())));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const Error& e) {
      throw Error(e.code(), "stage '" + stage + "', document '" + docs[i].id + "': " + e.what());
    }
  }
  std::vector<Result> out;
  out.reserve(docs.size());
  for (auto& r : results) out.push_back(std::move(*r));
  return out;
}

const char* input_stage(const PipelineConfig& c) { return c.input_type == InputType::kCoded ? "load" : "encode"; }

CodedSequence sequence_of(const InputDocument& doc, const PipelineConfig& c) {
  if (c.input_type == InputType::kCoded) return load_coded_file(doc.path);
  const BinaryImage img = load_image(doc.path, c.ink);
  return encode_segmentation(segment(img, c.segment), c.mapper);
}

void ensure_out_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(ErrorCode::kIo, "cannot create output directory " + dir.string() + ": " + ec.message());
}

fs::path resolve_in_dir(const fs::path& p, const char* default_name) {
  if (fs::is_directory(p)) return p / default_name;
  return p;
}

std::optional<fs::path> find_labels(const PipelineConfig& c) {
  if (c.labels) return c.labels;
  fs::path dir = fs::is_directory(c.input) ? c.input : c.input.parent_path();
  if (fs::exists(dir / "labels.csv")) return dir / "labels.csv";
  return std::nullopt;
}

FeatureTable compute_features(const std::vector<InputDocument>& docs, const PipelineConfig& c,
                              const std::vector<CodedSequence>& seqs, StageResult& result) {
  FeatureTable table;
  Json degenerate = Json::array();
  for (std::size_t i = 0; i < docs.size(); ++i) {
    try {
      table.add(docs[i].id, feature_vector(seqs[i], c.albp));
    } catch (const Error& e) {
      throw Error(e.code(), "stage 'features', document '" + docs[i].id + "': " + e.what());
    }
    if (is_degenerate(seqs[i])) degenerate.push_back(docs[i].id);
  }
  if (!degenerate.empty()) {
    result.warnings.push_back(std::to_string(degenerate.size()) + " document(s) shorter than 4 symbols are degenerate");
  }
  result.summary["degenerate"] = std::move(degenerate);
  return table;
}

StageResult stage_segment(const PipelineConfig& c) {
  if (c.input_type != InputType::kImages) fail(ErrorCode::kConfig, "segment needs --input-type images");
  const auto docs = list_documents(c);
  ensure_out_dir(c.out);
  auto segs = for_each_document<Segmentation>("segment", docs, [&](const InputDocument& d) {
    return segment(load_image(d.path, c.ink), c.segment);
  });
  StageResult r;
  Json counts = Json::object();
  for (std::size_t i = 0; i < docs.size(); ++i) {
    write_text(c.out / (docs[i].id + ".segments.json"), segmentation_to_json(docs[i].id, segs[i]).dump(2) + "\n");
    counts[docs[i].id] = segs[i].blobs.size();
  }
  r.summary["blobs"] = std::move(counts);
  return r;
}

StageResult stage_encode(const PipelineConfig& c) {
  if (c.input_type != InputType::kImages) fail(ErrorCode::kConfig, "encode needs --input-type images");
  const auto docs = list_documents(c);
  ensure_out_dir(c.out);
  auto seqs = for_each_document<CodedSequence>(input_stage(c), docs, [&](const InputDocument& d) { return sequence_of(d, c); });
  StageResult r;
  for (std::size_t i = 0; i < docs.size(); ++i) save_coded_file(seqs[i], c.out / (docs[i].id + ".txt"));
  r.summary["documents"] = docs.size();
  return r;
}

StageResult stage_features(const PipelineConfig& c) {
  const auto docs = list_documents(c);
  ensure_out_dir(c.out);
  StageResult r;
  auto seqs = for_each_document<CodedSequence>(input_stage(c), docs, [&](const InputDocument& d) { return sequence_of(d, c); });
  const FeatureTable table = compute_features(docs, c, seqs, r);
  write_feature_csv(table, c.out / "features.csv");
  r.summary["documents"] = docs.size();
  r.summary["features"] = (c.out / "features.csv").string();
  return r;
}

void record_cluster_outcome(ClusterOutcome& outcome, StageResult& r) {
  r.warnings.insert(r.warnings.end(), outcome.warnings.begin(), outcome.warnings.end());
  r.summary["k"] = outcome.record.clustering.k();
  r.summary["fitness"] = outcome.record.fitness;
}

StageResult stage_cluster(const PipelineConfig& c) {
  if (c.input.empty()) fail(ErrorCode::kConfig, "no --input given");
  const fs::path csv = resolve_in_dir(c.input, "features.csv");
  if (!fs::exists(csv)) fail(ErrorCode::kConfig, "feature table not found: " + csv.string());
  const FeatureTable table = read_feature_csv(csv);
  ensure_out_dir(c.out);
  StageResult r;
  ClusterOutcome outcome;
  try {
    outcome = cluster_features(table, c.cluster);
  } catch (const Error& e) {
    throw Error(e.code(), std::string("stage 'cluster': ") + e.what());
  }
  write_text(c.out / "clustering.json", clustering_to_json(outcome.record).dump(2) + "\n");
  record_cluster_outcome(outcome, r);
  return r;
}

StageResult stage_evaluate(const PipelineConfig& c) {
  const fs::path clustering_path = c.clustering ? *c.clustering : resolve_in_dir(c.input, "clustering.json");
  if (!fs::exists(clustering_path)) fail(ErrorCode::kConfig, "clustering file not found: " + clustering_path.string());
  fs::path labels_path;
  if (c.labels) {
    labels_path = *c.labels;
  } else {
    labels_path = clustering_path.parent_path() / "labels.csv";
  }
  if (!fs::exists(labels_path)) fail(ErrorCode::kConfig, "labels file not found: " + labels_path.string());
  const ClusteringRecord rec = clustering_from_json(read_json(clustering_path));
  const LabelTable labels = read_labels_csv(labels_path);
  EvalReport report;
  try {
    report = evaluate_record(rec, labels);
  } catch (const Error& e) {
    throw Error(e.code(), std::string("stage 'evaluate': ") + e.what());
  }
  ensure_out_dir(c.out);
  write_text(c.out / "report.json", report_to_json(report).dump(2) + "\n");
  SummaryTable table(report.class_names);
  table.add(rec.method, report);
  write_text(c.out / "report.txt", table.format());
  StageResult r;
  r.summary["nmi"] = report.nmi;
  return r;
}

StageResult stage_pipeline(const PipelineConfig& c) {
  const auto docs = list_documents(c);
  ensure_out_dir(c.out);
  StageResult r;
  auto seqs = for_each_document<CodedSequence>(input_stage(c), docs, [&](const InputDocument& d) { return sequence_of(d, c); });
  if (c.input_type == InputType::kImages) {
    ensure_out_dir(c.out / "coded");
    for (std::size_t i = 0; i < docs.size(); ++i) save_coded_file(seqs[i], c.out / "coded" / (docs[i].id + ".txt"));
  }
  const FeatureTable table = compute_features(docs, c, seqs, r);
  write_feature_csv(table, c.out / "features.csv");

  const auto labels_path = find_labels(c);
  std::optional<LabelTable> labels;
  if (labels_path) {
    labels = read_labels_csv(*labels_path);
    write_labels_csv(*labels, c.out / "labels.csv");
  } else {
    r.warnings.push_back("no labels.csv found; skipping evaluation");
  }

  std::optional<SummaryTable> summary;
  if (labels) summary.emplace(labels->class_names());
  for (int run = 0; run < c.runs; ++run) {
    for (auto method : {ClusterMethod::kGaIcda, ClusterMethod::kKMeans, ClusterMethod::kAverageLinkage}) {
      if (method != ClusterMethod::kGaIcda && !labels) continue;
      ClusterSettings s = c.cluster;
      s.method = method;
      s.ga.rng_seed = c.seed + static_cast<std::uint64_t>(run);
      ClusterOutcome outcome;
      try {
        outcome = cluster_features(table, s);
      } catch (const Error& e) {
        throw Error(e.code(), "stage 'cluster' (" + std::string(method_name(method)) + "): " + e.what());
      }
      std::optional<EvalReport> report;
      if (labels) {
        try {
          report = evaluate_record(outcome.record, *labels);
        } catch (const Error& e) {
          throw Error(e.code(), std::string("stage 'evaluate': ") + e.what());
        }
        summary->add(method == ClusterMethod::kGaIcda ? "GA-ICDA"
                     : method == ClusterMethod::kKMeans ? "K-Means"
                                                        : "Hierarchical",
                     *report);
      }
      if (run == 0 && method == ClusterMethod::kGaIcda) {
        write_text(c.out / "clustering.json", clustering_to_json(outcome.record).dump(2) + "\n");
        record_cluster_outcome(outcome, r);
        if (report) {
          write_text(c.out / "report.json", report_to_json(*report).dump(2) + "\n");
          r.summary["nmi"] = report->nmi;
        }
      }
    }
  }
  if (summary) write_text(c.out / "report.txt", summary->format());
  r.summary["documents"] = docs.size();
  return r;
}

StageResult stage_synth(const PipelineConfig& c) {
  SyntheticDataset ds;
  if (!c.synth_profiles.empty()) {
    ds.documents = generate_synthetic(c.synth_profiles, c.synth_counts, c.seed);
    for (const auto& p : c.synth_profiles) {
      if (std::find(ds.class_names.begin(), ds.class_names.end(), p.class_name) == ds.class_names.end()) {
        ds.class_names.push_back(p.class_name);
      }
    }
  } else {
    ds = preset_dataset(c.synth_preset, c.seed);
  }
  ensure_out_dir(c.out);
  LabelTable labels;
  for (const auto& d : ds.documents) {
    save_coded_file(d.sequence, c.out / (d.id + ".txt"));
    labels.ids.push_back(d.id);
    labels.classes.push_back(d.class_name);
  }
  write_labels_csv(labels, c.out / "labels.csv");
  if (c.synth_render) {
    const fs::path img_dir = c.out / "images";
    ensure_out_dir(img_dir);
    constexpr std::size_t kPerLine = 20;
    for (const auto& d : ds.documents) {
      std::vector<std::vector<ScriptType>> lines;
      for (std::size_t i = 0; i < d.sequence.size(); ++i) {
        if (i % kPerLine == 0) lines.emplace_back();
        lines.back().push_back(static_cast<ScriptType>(d.sequence[i]));
      }
      save_pgm(render_lines(lines), img_dir / (d.id + ".pgm"));
    }
    write_labels_csv(labels, img_dir / "labels.csv");
  }
  StageResult r;
  r.summary["documents"] = ds.documents.size();
  r.summary["classes"] = ds.class_names;
  return r;
}

}  // namespace

StageResult run_command(const std::string& command, const PipelineConfig& config) {
  if (command == "segment" || command == "encode") {
    PipelineConfig images = config;
    if (!images.input_type_given) images.input_type = InputType::kImages;
    return command == "segment" ? stage_segment(images) : stage_encode(images);
  }
  if (command == "features") return stage_features(config);
  if (command == "cluster") return stage_cluster(config);
  if (command == "evaluate") return stage_evaluate(config);
  if (command == "pipeline") return stage_pipeline(config);
  if (command == "synth") return stage_synth(config);
  fail(ErrorCode::kConfig, "unknown command '" + command + "'");
}

}  // namespace scriptid
