#include "core/formats.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <unordered_set>

#include "core/error.hpp"

namespace scriptid {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

void check_id(const std::string& id) {
  if (id.empty() || id.find_first_of(",\n\r\"") != std::string::npos) {
    fail(ErrorCode::kInvalidArgument, "document id '" + id + "' is empty or contains CSV metacharacters");
  }
}

double parse_double(const std::string& s, const std::filesystem::path& path, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    fail(ErrorCode::kParse, path.string() + ":" + std::to_string(line) + ": bad number '" + s + "'");
  }
  return v;
}

}  // namespace

void FeatureTable::add(std::string id, const FeatureVector& v) {
  check_id(id);
  // ids key the clustering assignment, so a repeat would silently alias two rows
  if (std::find(ids.begin(), ids.end(), id) != ids.end()) {
    fail(ErrorCode::kInvalidArgument, "duplicate document id '" + id + "'");
  }
  ids.push_back(std::move(id));
  values.append_row(v);
}

std::string feature_csv_header() {
  std::string h = "doc_id";
  for (auto name : kRunLengthFeatureNames) {
    h += ',';
    h += name;
  }
  char buf[16];
  for (std::size_t b = 0; b < kAlbpBins; ++b) {
    std::snprintf(buf, sizeof buf, ",albp_%02zu", b);
    h += buf;
  }
  return h;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) fail(ErrorCode::kInvalidArgument, "cannot format number");
  return std::string(buf, ptr);
}

void write_feature_csv(const FeatureTable& table, const std::filesystem::path& path) {
  std::string out = feature_csv_header() + '\n';
  for (std::size_t r = 0; r < table.ids.size(); ++r) {
    out += table.ids[r];
    for (double v : table.values.row(r)) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  write_text(path, out);
}

FeatureTable read_feature_csv(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty() || lines.front() != feature_csv_header()) {
    fail(ErrorCode::kParse, path.string() + ": missing or unexpected feature CSV header");
  }
  FeatureTable table;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_csv_line(lines[i]);
    if (fields.size() != kFeatureCount + 1) {
      fail(ErrorCode::kParse, path.string() + ":" + std::to_string(i + 1) + ": expected " +
                                  std::to_string(kFeatureCount + 1) + " fields");
    }
    if (!seen.insert(fields[0]).second) {
      fail(ErrorCode::kParse, path.string() + ":" + std::to_string(i + 1) + ": duplicate document id '" + fields[0] + "'");
    }
    FeatureVector v{};
    for (std::size_t c = 0; c < kFeatureCount; ++c) v[c] = parse_double(fields[c + 1], path, i + 1);
    table.add(fields[0], v);
  }
  return table;
}

std::vector<std::string> LabelTable::class_names() const {
  std::vector<std::string> names;
  std::unordered_set<std::string> seen;
  for (const auto& c : classes) {
    if (seen.insert(c).second) names.push_back(c);
  }
  return names;
}

void write_labels_csv(const LabelTable& labels, const std::filesystem::path& path) {
  std::string out = "doc_id,class\n";
  for (std::size_t i = 0; i < labels.ids.size(); ++i) out += labels.ids[i] + ',' + labels.classes[i] + '\n';
  write_text(path, out);
}

LabelTable read_labels_csv(const std::filesystem::path& path) {
  const auto lines = read_lines(path);
  if (lines.empty() || lines.front() != "doc_id,class") {
    fail(ErrorCode::kParse, path.string() + ": expected header 'doc_id,class'");
  }
  LabelTable t;
  std::unordered_set<std::string> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_csv_line(lines[i]);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty()) {
      fail(ErrorCode::kParse, path.string() + ":" + std::to_string(i + 1) + ": expected doc_id,class");
    }
    if (!seen.insert(fields[0]).second) {
      fail(ErrorCode::kParse, path.string() + ": duplicate label for '" + fields[0] + "'");
    }
    t.ids.push_back(fields[0]);
    t.classes.push_back(fields[1]);
  }
  return t;
}

Json clustering_to_json(const ClusteringRecord& rec) {
  Json j;
  j["method"] = rec.method;
  j["params"] = rec.params;
  Json assignment = Json::object();
  for (std::size_t i = 0; i < rec.ids.size(); ++i) assignment[rec.ids[i]] = rec.clustering[i];
  j["assignment"] = std::move(assignment);
  j["k"] = rec.clustering.k();
  j["fitness"] = rec.fitness;
  j["excluded"] = rec.excluded;
  return j;
}

ClusteringRecord clustering_from_json(const Json& j) {
  try {
    ClusteringRecord rec;
    rec.method = j.value("method", std::string("gaicda"));
    rec.params = j.value("params", Json::object());
    std::vector<int> labels;
    for (const auto& [id, cluster] : j.at("assignment").items()) {
      rec.ids.push_back(id);
      labels.push_back(cluster.get<int>());
    }
    rec.clustering = Clustering(labels);
    rec.fitness = j.at("fitness").get<double>();
    if (j.contains("excluded")) rec.excluded = j["excluded"].get<std::vector<std::string>>();
    return rec;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("malformed clustering JSON: ") + e.what());
  }
}

Json report_to_json(const EvalReport& report) {
  Json j;
  Json per_class = Json::object();
  for (std::size_t c = 0; c < report.class_names.size(); ++c) {
    per_class[report.class_names[c]] = {{"precision", report.per_class[c].precision},
                                        {"recall", report.per_class[c].recall},
                                        {"f_measure", report.per_class[c].f_measure}};
  }
  j["per_class"] = std::move(per_class);
  j["nmi"] = report.nmi;
  Json confusion = Json::array();
  for (std::size_t i = 0; i < report.confusion.classes(); ++i) {
    Json row = Json::array();
    for (std::size_t c = 0; c < report.confusion.clusters(); ++c) row.push_back(report.confusion.at(i, c));
    confusion.push_back(std::move(row));
  }
  j["confusion"] = std::move(confusion);
  Json mapping = Json::object();
  for (std::size_t c = 0; c < report.mapping.size(); ++c) {
    mapping[std::to_string(c)] = report.class_names[static_cast<std::size_t>(report.mapping[c])];
  }
  j["mapping"] = std::move(mapping);
  j["classes"] = report.class_names;
  return j;
}

Json segmentation_to_json(const std::string& doc_id, const Segmentation& seg) {
  Json j;
  j["doc_id"] = doc_id;
  Json bands = Json::array();
  for (const auto& b : seg.bands) bands.push_back({{"y_top", b.y_top}, {"y_bottom", b.y_bottom}, {"y_mid", b.y_mid()}});
  j["bands"] = std::move(bands);
  Json blobs = Json::array();
  for (const auto& b : seg.blobs) {
    blobs.push_back({{"bbox", {b.bbox.x_min, b.bbox.y_min, b.bbox.x_max, b.bbox.y_max}},
                     {"height", b.height()},
                     {"center", {b.x_center(), b.y_center()}},
                     {"area", b.area},
                     {"line_index", b.line_index}});
  }
  j["blobs"] = std::move(blobs);
  return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::kIo, "cannot write " + path.string());
  out << text;
  if (!out) fail(ErrorCode::kIo, "write failed for " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

Json read_json(const std::filesystem::path& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::kParse, path.string() + ": " + e.what());
  }
}

}  // namespace scriptid
