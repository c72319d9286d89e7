#include "scriptid/scriptid.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <string>

#include "core/error.hpp"
#include "core/pipeline.hpp"

using namespace scriptid;

struct sid_image {
  BinaryImage img;
};
struct sid_segmentation {
  Segmentation seg;
};
struct sid_sequence {
  CodedSequence seq;
};
struct sid_dataset {
  FeatureTable table;
};
struct sid_clustering {
  ClusteringRecord rec;
};
struct sid_report {
  EvalReport report;
};

namespace {

thread_local std::string last_error;

sid_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return SID_ERR_INVALID_ARGUMENT;
    case ErrorCode::kEmptyDocument: return SID_ERR_EMPTY_DOCUMENT;
    case ErrorCode::kEmptySequence: return SID_ERR_EMPTY_SEQUENCE;
    case ErrorCode::kOutOfRange: return SID_ERR_OUT_OF_RANGE;
    case ErrorCode::kTooFewDocuments: return SID_ERR_TOO_FEW_DOCUMENTS;
    case ErrorCode::kInvalidTarget: return SID_ERR_INVALID_TARGET;
    case ErrorCode::kInvalidK: return SID_ERR_INVALID_K;
    case ErrorCode::kEmptyCluster: return SID_ERR_EMPTY_CLUSTER;
    case ErrorCode::kUnknownClass: return SID_ERR_UNKNOWN_CLASS;
    case ErrorCode::kInvalidProfile: return SID_ERR_INVALID_PROFILE;
    case ErrorCode::kIo: return SID_ERR_IO;
    case ErrorCode::kParse: return SID_ERR_PARSE;
    case ErrorCode::kConfig: return SID_ERR_CONFIG;
  }
  return SID_ERR_INTERNAL;
}

template <class Fn>
sid_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return SID_OK;
  } catch (const Error& e) {
    last_error = std::string(error_code_name(e.code())) + ": " + e.what();
    return to_status(e.code());
  } catch (const std::exception& e) {
    last_error = std::string("internal error: ") + e.what();
    return SID_ERR_INTERNAL;
  } catch (...) {
    last_error = "internal error";
    return SID_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (!p) fail(ErrorCode::kInvalidArgument, std::string(what) + " must not be null");
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

SegmentParams to_core(const sid_segment_params* p) {
  SegmentParams s;
  if (p) {
    s.min_gap = p->min_gap;
    s.min_blob_area = p->min_blob_area;
  }
  return s;
}

ClusterSettings to_core(const sid_cluster_params& p) {
  ClusterSettings s;
  switch (p.method) {
    case SID_METHOD_GAICDA: s.method = ClusterMethod::kGaIcda; break;
    case SID_METHOD_KMEANS: s.method = ClusterMethod::kKMeans; break;
    case SID_METHOD_AVERAGE_LINKAGE: s.method = ClusterMethod::kAverageLinkage; break;
    default: fail(ErrorCode::kConfig, "unknown clustering method");
  }
  s.h = p.h;
  s.bandwidth = p.bandwidth;
  s.k_target = p.k_target;
  s.ga.rng_seed = p.seed;
  s.ga.population_size = p.population_size;
  s.ga.generations = p.generations;
  s.ga.crossover_rate = p.crossover_rate;
  s.ga.mutation_rate = p.mutation_rate;
  s.ga.elite_count = p.elite_count;
  s.ga.tournament_size = p.tournament_size;
  s.restarts = p.restarts;
  s.include_degenerate = p.include_degenerate != 0;
  s.ordering = p.rcm_ordering ? NodeOrdering::kReverseCuthillMcKee : NodeOrdering::kInput;
  return s;
}

}  // namespace

extern "C" {

const char* sid_status_name(sid_status status) {
  switch (status) {
    case SID_OK: return "OK";
    case SID_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case SID_ERR_EMPTY_DOCUMENT: return "EmptyDocument";
    case SID_ERR_EMPTY_SEQUENCE: return "EmptySequence";
    case SID_ERR_OUT_OF_RANGE: return "OutOfRange";
    case SID_ERR_TOO_FEW_DOCUMENTS: return "TooFewDocuments";
    case SID_ERR_INVALID_TARGET: return "InvalidTarget";
    case SID_ERR_INVALID_K: return "InvalidK";
    case SID_ERR_EMPTY_CLUSTER: return "EmptyCluster";
    case SID_ERR_UNKNOWN_CLASS: return "UnknownClass";
    case SID_ERR_INVALID_PROFILE: return "InvalidProfile";
    case SID_ERR_IO: return "Io";
    case SID_ERR_PARSE: return "Parse";
    case SID_ERR_CONFIG: return "Config";
    case SID_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

const char* sid_last_error_message(void) { return last_error.c_str(); }

int sid_status_is_config_error(sid_status status) {
  return status == SID_ERR_CONFIG || status == SID_ERR_INVALID_TARGET || status == SID_ERR_INVALID_K ||
         status == SID_ERR_INVALID_PROFILE;
}

void sid_string_free(char* str) { std::free(str); }

sid_status sid_image_load(const char* path, sid_ink ink, sid_image** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new sid_image{load_image(path, ink == SID_INK_LIGHT ? InkPolarity::kLight : InkPolarity::kDark)};
  });
}

sid_status sid_image_from_bits(int width, int height, const uint8_t* bits, sid_image** out) {
  return guarded([&] {
    need(bits, "bits");
    need(out, "out");
    if (width < 1 || height < 1) fail(ErrorCode::kInvalidArgument, "image dimensions must be positive");
    std::vector<std::uint8_t> px(bits, bits + static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
    *out = new sid_image{BinaryImage(width, height, std::move(px))};
  });
}

int sid_image_width(const sid_image* img) { return img ? img->img.width() : 0; }
int sid_image_height(const sid_image* img) { return img ? img->img.height() : 0; }
void sid_image_free(sid_image* img) { delete img; }

void sid_segment_params_default(sid_segment_params* params) {
  if (!params) return;
  SegmentParams d;
  params->min_gap = d.min_gap;
  params->min_blob_area = d.min_blob_area;
}

sid_status sid_segment(const sid_image* img, const sid_segment_params* params, sid_segmentation** out) {
  return guarded([&] {
    need(img, "img");
    need(out, "out");
    *out = new sid_segmentation{segment(img->img, to_core(params))};
  });
}

size_t sid_segmentation_band_count(const sid_segmentation* seg) { return seg ? seg->seg.bands.size() : 0; }
size_t sid_segmentation_blob_count(const sid_segmentation* seg) { return seg ? seg->seg.blobs.size() : 0; }

sid_status sid_segmentation_band(const sid_segmentation* seg, size_t index, sid_band* out) {
  return guarded([&] {
    need(seg, "seg");
    need(out, "out");
    if (index >= seg->seg.bands.size()) fail(ErrorCode::kOutOfRange, "band index out of range");
    const auto& b = seg->seg.bands[index];
    *out = {b.y_top, b.y_bottom};
  });
}

sid_status sid_segmentation_blob(const sid_segmentation* seg, size_t index, sid_blob* out) {
  return guarded([&] {
    need(seg, "seg");
    need(out, "out");
    if (index >= seg->seg.blobs.size()) fail(ErrorCode::kOutOfRange, "blob index out of range");
    const auto& b = seg->seg.blobs[index];
    *out = {b.bbox.x_min, b.bbox.y_min, b.bbox.x_max, b.bbox.y_max, b.area, b.line_index};
  });
}

void sid_segmentation_free(sid_segmentation* seg) { delete seg; }

void sid_mapper_params_default(sid_mapper_params* params) {
  if (!params) return;
  MapperParams d;
  params->flat_tolerance = d.flat_tolerance;
  params->eps_fraction = d.eps_fraction;
}

sid_status sid_encode(const sid_segmentation* seg, const sid_mapper_params* params, sid_sequence** out) {
  return guarded([&] {
    need(seg, "seg");
    need(out, "out");
    MapperParams m;
    if (params) {
      m.flat_tolerance = params->flat_tolerance;
      m.eps_fraction = params->eps_fraction;
    }
    *out = new sid_sequence{encode_segmentation(seg->seg, m)};
  });
}

sid_status sid_sequence_from_codes(const uint8_t* codes, size_t length, sid_sequence** out) {
  return guarded([&] {
    need(out, "out");
    if (length > 0) need(codes, "codes");
    *out = new sid_sequence{CodedSequence(std::vector<std::uint8_t>(codes, codes + length))};
  });
}

sid_status sid_sequence_parse(const char* text, sid_sequence** out) {
  return guarded([&] {
    need(text, "text");
    need(out, "out");
    *out = new sid_sequence{parse_coded_text(text)};
  });
}

sid_status sid_sequence_load(const char* path, sid_sequence** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new sid_sequence{load_coded_file(path)};
  });
}

sid_status sid_sequence_save(const sid_sequence* seq, const char* path) {
  return guarded([&] {
    need(seq, "seq");
    need(path, "path");
    save_coded_file(seq->seq, path);
  });
}

size_t sid_sequence_length(const sid_sequence* seq) { return seq ? seq->seq.size() : 0; }

size_t sid_sequence_codes(const sid_sequence* seq, uint8_t* buf, size_t capacity) {
  if (!seq || !buf) return 0;
  const auto s = seq->seq.symbols();
  const size_t n = std::min(capacity, s.size());
  std::copy_n(s.begin(), n, buf);
  return n;
}

void sid_sequence_free(sid_sequence* seq) { delete seq; }

sid_status sid_features(const sid_sequence* seq, sid_albp_mode mode, double out[SID_FEATURE_COUNT], int* degenerate) {
  return guarded([&] {
    need(seq, "seq");
    need(out, "out");
    const auto v = feature_vector(seq->seq, mode == SID_ALBP_COUNTS ? AlbpMode::kCounts : AlbpMode::kNormalized);
    std::copy(v.begin(), v.end(), out);
    if (degenerate) *degenerate = is_degenerate(seq->seq) ? 1 : 0;
  });
}

const char* sid_feature_name(size_t index) {
  static const char* const albp[] = {"albp_00", "albp_01", "albp_02", "albp_03", "albp_04", "albp_05",
                                     "albp_06", "albp_07", "albp_08", "albp_09", "albp_10", "albp_11",
                                     "albp_12", "albp_13", "albp_14", "albp_15"};
  if (index < kRunLengthFeatureCount) return kRunLengthFeatureNames[index].data();
  if (index < kFeatureCount) return albp[index - kRunLengthFeatureCount];
  return nullptr;
}

sid_status sid_dataset_create(sid_dataset** out) {
  return guarded([&] {
    need(out, "out");
    *out = new sid_dataset{};
  });
}

sid_status sid_dataset_add(sid_dataset* ds, const char* doc_id, const double values[SID_FEATURE_COUNT]) {
  return guarded([&] {
    need(ds, "ds");
    need(doc_id, "doc_id");
    need(values, "values");
    FeatureVector v{};
    std::copy(values, values + kFeatureCount, v.begin());
    ds->table.add(doc_id, v);
  });
}

size_t sid_dataset_size(const sid_dataset* ds) { return ds ? ds->table.ids.size() : 0; }

sid_status sid_dataset_load_csv(const char* path, sid_dataset** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new sid_dataset{read_feature_csv(path)};
  });
}

sid_status sid_dataset_save_csv(const sid_dataset* ds, const char* path) {
  return guarded([&] {
    need(ds, "ds");
    need(path, "path");
    write_feature_csv(ds->table, path);
  });
}

void sid_dataset_free(sid_dataset* ds) { delete ds; }

void sid_cluster_params_default(sid_cluster_params* params) {
  if (!params) return;
  ClusterSettings d;
  params->method = SID_METHOD_GAICDA;
  params->h = d.h;
  params->bandwidth = d.bandwidth;
  params->k_target = d.k_target;
  params->seed = d.ga.rng_seed;
  params->population_size = d.ga.population_size;
  params->generations = d.ga.generations;
  params->crossover_rate = d.ga.crossover_rate;
  params->mutation_rate = d.ga.mutation_rate;
  params->elite_count = d.ga.elite_count;
  params->tournament_size = d.ga.tournament_size;
  params->restarts = d.restarts;
  params->include_degenerate = d.include_degenerate ? 1 : 0;
  params->rcm_ordering = 0;
}

sid_status sid_cluster_params_profile(const char* name, sid_cluster_params* params) {
  return guarded([&] {
    need(name, "name");
    need(params, "params");
    const ClusterSettings s = cluster_profile(name);
    params->h = s.h;
    params->bandwidth = s.bandwidth;
  });
}

sid_status sid_cluster(const sid_dataset* ds, const sid_cluster_params* params, sid_clustering** out) {
  return guarded([&] {
    need(ds, "ds");
    need(out, "out");
    sid_cluster_params p;
    sid_cluster_params_default(&p);
    if (params) p = *params;
    *out = new sid_clustering{cluster_features(ds->table, to_core(p)).record};
  });
}

int sid_clustering_k(const sid_clustering* c) { return c ? c->rec.clustering.k() : 0; }
size_t sid_clustering_size(const sid_clustering* c) { return c ? c->rec.ids.size() : 0; }
double sid_clustering_fitness(const sid_clustering* c) { return c ? c->rec.fitness : 0.0; }

sid_status sid_clustering_cluster_of(const sid_clustering* c, const char* doc_id, int* cluster) {
  return guarded([&] {
    need(c, "c");
    need(doc_id, "doc_id");
    need(cluster, "cluster");
    for (std::size_t i = 0; i < c->rec.ids.size(); ++i) {
      if (c->rec.ids[i] == doc_id) {
        *cluster = c->rec.clustering[i];
        return;
      }
    }
    fail(ErrorCode::kOutOfRange, std::string("document '") + doc_id + "' is not clustered");
  });
}

sid_status sid_clustering_to_json(const sid_clustering* c, char** json) {
  return guarded([&] {
    need(c, "c");
    need(json, "json");
    *json = dup_string(clustering_to_json(c->rec).dump(2));
  });
}

sid_status sid_clustering_save_json(const sid_clustering* c, const char* path) {
  return guarded([&] {
    need(c, "c");
    need(path, "path");
    write_text(path, clustering_to_json(c->rec).dump(2) + "\n");
  });
}

sid_status sid_clustering_load_json(const char* path, sid_clustering** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    *out = new sid_clustering{clustering_from_json(read_json(path))};
  });
}

void sid_clustering_free(sid_clustering* c) { delete c; }

sid_status sid_evaluate(const sid_clustering* c, const char* labels_csv, sid_report** out) {
  return guarded([&] {
    need(c, "c");
    need(labels_csv, "labels_csv");
    need(out, "out");
    *out = new sid_report{evaluate_record(c->rec, read_labels_csv(labels_csv))};
  });
}

double sid_report_nmi(const sid_report* r) { return r ? r->report.nmi : 0.0; }

sid_status sid_report_class_score(const sid_report* r, const char* class_name, double* precision, double* recall,
                                  double* f_measure) {
  return guarded([&] {
    need(r, "r");
    need(class_name, "class_name");
    const auto& names = r->report.class_names;
    auto it = std::find(names.begin(), names.end(), class_name);
    if (it == names.end()) fail(ErrorCode::kUnknownClass, std::string("unknown class '") + class_name + "'");
    const ClassScore& s = r->report.per_class[static_cast<std::size_t>(it - names.begin())];
    if (precision) *precision = s.precision;
    if (recall) *recall = s.recall;
    if (f_measure) *f_measure = s.f_measure;
  });
}

sid_status sid_report_to_json(const sid_report* r, char** json) {
  return guarded([&] {
    need(r, "r");
    need(json, "json");
    *json = dup_string(report_to_json(r->report).dump(2));
  });
}

void sid_report_free(sid_report* r) { delete r; }

sid_status sid_nmi(const int* truth, const int* pred, size_t n, double* out) {
  return guarded([&] {
    need(truth, "truth");
    need(pred, "pred");
    need(out, "out");
    *out = nmi(std::span<const int>(truth, n), std::span<const int>(pred, n));
  });
}

sid_status sid_run_command(const char* command, const char* config_json, char** result_json) {
  return guarded([&] {
    need(command, "command");
    Json cfg = Json::object();
    if (config_json && *config_json) {
      try {
        cfg = Json::parse(config_json);
      } catch (const nlohmann::json::parse_error& e) {
        fail(ErrorCode::kConfig, std::string("config is not valid JSON: ") + e.what());
      }
    }
    const StageResult r = run_command(command, config_from_json(cfg));
    if (result_json) {
      Json j;
      j["summary"] = r.summary;
      j["warnings"] = r.warnings;
      *result_json = dup_string(j.dump(2));
    }
  });
}

}  // extern "C"
