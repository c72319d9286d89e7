#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "core/binary_image.hpp"
#include "core/formats.hpp"
#include "core/gaicda_cluster.hpp"
#include "core/synthetic.hpp"
#include "core/texture_features.hpp"
#include "core/typographic_mapper.hpp"

namespace scriptid {

enum class ClusterMethod { kGaIcda, kKMeans, kAverageLinkage };
enum class NodeOrdering { kInput, kReverseCuthillMcKee };

std::string_view method_name(ClusterMethod m);

struct ClusterSettings {
  ClusterMethod method = ClusterMethod::kGaIcda;
  int h = 15;
  int bandwidth = 4;
  int k_target = 3;
  GaParams ga;
  int restarts = 100;
  bool include_degenerate = false;
  NodeOrdering ordering = NodeOrdering::kInput;
};

// Named parameter presets for the two reference label collections.
ClusterSettings cluster_profile(const std::string& name);

struct ClusterOutcome {
  ClusteringRecord record;
  std::vector<std::string> warnings;
};

// Standardizes the clustered rows, then runs the selected method. Rows whose
// ALBP bins are all zero (sequences shorter than 4) are excluded unless
// include_degenerate is set.
ClusterOutcome cluster_features(const FeatureTable& table, const ClusterSettings& settings);

// Evaluates clustered documents against labels; every clustered id needs a label.
EvalReport evaluate_record(const ClusteringRecord& record, const LabelTable& labels);

enum class InputType { kImages, kCoded };

struct PipelineConfig {
  std::filesystem::path input;
  InputType input_type = InputType::kCoded;
  bool input_type_given = false;  // segment and encode default to images
  std::optional<std::filesystem::path> labels;
  std::optional<std::filesystem::path> clustering;  // evaluate stage input
  std::filesystem::path out = "out";
  InkPolarity ink = InkPolarity::kDark;
  SegmentParams segment;
  MapperParams mapper;
  AlbpMode albp = AlbpMode::kNormalized;
  ClusterSettings cluster;
  std::uint64_t seed = 1;
  int runs = 1;
  // synth stage
  std::string synth_preset = "db1";
  std::vector<SyntheticProfile> synth_profiles;
  std::vector<int> synth_counts;
  bool synth_render = false;
};

// Keys mirror the CLI flags; unknown keys are a config error.
PipelineConfig config_from_json(const Json& j);

struct StageResult {
  Json summary = Json::object();
  std::vector<std::string> warnings;
};

// command: segment | encode | features | cluster | evaluate | pipeline | synth
StageResult run_command(const std::string& command, const PipelineConfig& config);

}  // namespace scriptid
