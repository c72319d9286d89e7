#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/clustering.hpp"
#include "core/evaluation.hpp"
#include "core/feature_matrix.hpp"
#include "core/textline_segmenter.hpp"
#include "core/texture_features.hpp"

namespace scriptid {

using Json = nlohmann::ordered_json;

// Raw (unstandardized) per-document feature rows.
struct FeatureTable {
  std::vector<std::string> ids;
  FeatureMatrix values;  // n x 27

  void add(std::string id, const FeatureVector& v);
};

std::string feature_csv_header();
// Shortest round-trip decimal form, '.' separator.
std::string format_double(double v);

void write_feature_csv(const FeatureTable& table, const std::filesystem::path& path);
FeatureTable read_feature_csv(const std::filesystem::path& path);

struct LabelTable {
  std::vector<std::string> ids;
  std::vector<std::string> classes;

  // Class names in order of first appearance.
  std::vector<std::string> class_names() const;
};

void write_labels_csv(const LabelTable& labels, const std::filesystem::path& path);
LabelTable read_labels_csv(const std::filesystem::path& path);

struct ClusteringRecord {
  std::string method;
  Json params = Json::object();
  std::vector<std::string> ids;  // clustered documents, in input order
  Clustering clustering;
  double fitness = 0.0;
  std::vector<std::string> excluded;  // degenerate documents left out
};

Json clustering_to_json(const ClusteringRecord& rec);
ClusteringRecord clustering_from_json(const Json& j);

Json report_to_json(const EvalReport& report);
Json segmentation_to_json(const std::string& doc_id, const Segmentation& seg);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);
Json read_json(const std::filesystem::path& path);

}  // namespace scriptid
