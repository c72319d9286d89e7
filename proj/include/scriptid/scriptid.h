/*
 * scriptid: script identification for short historical labels.
 *
 * C interface over the core library. Objects are opaque handles created by
 * sid_*_create/load/... functions and released with the matching *_free.
 * Every fallible call returns a sid_status; on failure a description is
 * available from sid_last_error_message() on the calling thread.
 * Strings returned through char** must be released with sid_string_free.
 */
#ifndef SCRIPTID_SCRIPTID_H
#define SCRIPTID_SCRIPTID_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SCRIPTID_BUILDING)
#    define SID_API __declspec(dllexport)
#  else
#    define SID_API __declspec(dllimport)
#  endif
#else
#  define SID_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sid_status {
  SID_OK = 0,
  SID_ERR_INVALID_ARGUMENT = 1,
  SID_ERR_EMPTY_DOCUMENT = 2,
  SID_ERR_EMPTY_SEQUENCE = 3,
  SID_ERR_OUT_OF_RANGE = 4,
  SID_ERR_TOO_FEW_DOCUMENTS = 5,
  SID_ERR_INVALID_TARGET = 6,
  SID_ERR_INVALID_K = 7,
  SID_ERR_EMPTY_CLUSTER = 8,
  SID_ERR_UNKNOWN_CLASS = 9,
  SID_ERR_INVALID_PROFILE = 10,
  SID_ERR_IO = 11,
  SID_ERR_PARSE = 12,
  SID_ERR_CONFIG = 13,
  SID_ERR_INTERNAL = 14
} sid_status;

SID_API const char* sid_status_name(sid_status status);
SID_API const char* sid_last_error_message(void);
/* Nonzero for statuses caused by invalid configuration rather than bad data. */
SID_API int sid_status_is_config_error(sid_status status);
SID_API void sid_string_free(char* str);

/* ---- images and segmentation ------------------------------------------ */

typedef struct sid_image sid_image;
typedef struct sid_segmentation sid_segmentation;

typedef enum sid_ink { SID_INK_DARK = 0, SID_INK_LIGHT = 1 } sid_ink;

typedef struct sid_segment_params {
  int min_gap;
  size_t min_blob_area;
} sid_segment_params;

typedef struct sid_band {
  int y_top;
  int y_bottom;
} sid_band;

typedef struct sid_blob {
  int x_min, y_min, x_max, y_max;
  size_t area;
  size_t line_index;
} sid_blob;

/* PGM (P2/P5) or PNG with at most two gray levels. */
SID_API sid_status sid_image_load(const char* path, sid_ink ink, sid_image** out);
/* bits: width*height row-major values, 1 = ink. */
SID_API sid_status sid_image_from_bits(int width, int height, const uint8_t* bits, sid_image** out);
SID_API int sid_image_width(const sid_image* img);
SID_API int sid_image_height(const sid_image* img);
SID_API void sid_image_free(sid_image* img);

SID_API void sid_segment_params_default(sid_segment_params* params);
/* params may be NULL for defaults. */
SID_API sid_status sid_segment(const sid_image* img, const sid_segment_params* params, sid_segmentation** out);
SID_API size_t sid_segmentation_band_count(const sid_segmentation* seg);
SID_API size_t sid_segmentation_blob_count(const sid_segmentation* seg);
SID_API sid_status sid_segmentation_band(const sid_segmentation* seg, size_t index, sid_band* out);
SID_API sid_status sid_segmentation_blob(const sid_segmentation* seg, size_t index, sid_blob* out);
SID_API void sid_segmentation_free(sid_segmentation* seg);

/* ---- coded sequences --------------------------------------------------- */

typedef struct sid_sequence sid_sequence;

typedef struct sid_mapper_params {
  double flat_tolerance;
  double eps_fraction;
} sid_mapper_params;

SID_API void sid_mapper_params_default(sid_mapper_params* params);
SID_API sid_status sid_encode(const sid_segmentation* seg, const sid_mapper_params* params, sid_sequence** out);
SID_API sid_status sid_sequence_from_codes(const uint8_t* codes, size_t length, sid_sequence** out);
/* Digits '0'..'3', whitespace ignored. */
SID_API sid_status sid_sequence_parse(const char* text, sid_sequence** out);
SID_API sid_status sid_sequence_load(const char* path, sid_sequence** out);
SID_API sid_status sid_sequence_save(const sid_sequence* seq, const char* path);
SID_API size_t sid_sequence_length(const sid_sequence* seq);
/* Copies min(length, capacity) codes into buf. */
SID_API size_t sid_sequence_codes(const sid_sequence* seq, uint8_t* buf, size_t capacity);
SID_API void sid_sequence_free(sid_sequence* seq);

/* ---- texture features -------------------------------------------------- */

#define SID_FEATURE_COUNT 27

typedef enum sid_albp_mode { SID_ALBP_NORMALIZED = 0, SID_ALBP_COUNTS = 1 } sid_albp_mode;

/* out receives [sre lre gln rln rp lgre hgre srlge srhge lrlge lrhge albp_00..albp_15].
 * degenerate (optional) is set when the sequence is shorter than 4 symbols. */
SID_API sid_status sid_features(const sid_sequence* seq, sid_albp_mode mode, double out[SID_FEATURE_COUNT],
                                int* degenerate);
SID_API const char* sid_feature_name(size_t index);

/* ---- feature tables ---------------------------------------------------- */

typedef struct sid_dataset sid_dataset;

SID_API sid_status sid_dataset_create(sid_dataset** out);
SID_API sid_status sid_dataset_add(sid_dataset* ds, const char* doc_id, const double values[SID_FEATURE_COUNT]);
SID_API size_t sid_dataset_size(const sid_dataset* ds);
SID_API sid_status sid_dataset_load_csv(const char* path, sid_dataset** out);
SID_API sid_status sid_dataset_save_csv(const sid_dataset* ds, const char* path);
SID_API void sid_dataset_free(sid_dataset* ds);

/* ---- clustering -------------------------------------------------------- */

typedef struct sid_clustering sid_clustering;

typedef enum sid_method {
  SID_METHOD_GAICDA = 0,
  SID_METHOD_KMEANS = 1,
  SID_METHOD_AVERAGE_LINKAGE = 2
} sid_method;

typedef struct sid_cluster_params {
  sid_method method;
  int h;         /* neighbourhood size, clamped to n-1 */
  int bandwidth; /* identifier threshold T */
  int k_target;
  uint64_t seed;
  int population_size;
  int generations;
  double crossover_rate;
  double mutation_rate;
  int elite_count;
  int tournament_size;
  int restarts; /* k-means */
  int include_degenerate;
  int rcm_ordering; /* nonzero: reverse Cuthill-McKee node identifiers */
} sid_cluster_params;

SID_API void sid_cluster_params_default(sid_cluster_params* params);
/* "db1" (h=15, T=4) or "db2" (h=20, T=5) on top of the defaults. */
SID_API sid_status sid_cluster_params_profile(const char* name, sid_cluster_params* params);
SID_API sid_status sid_cluster(const sid_dataset* ds, const sid_cluster_params* params, sid_clustering** out);
SID_API int sid_clustering_k(const sid_clustering* c);
SID_API size_t sid_clustering_size(const sid_clustering* c);
SID_API double sid_clustering_fitness(const sid_clustering* c);
SID_API sid_status sid_clustering_cluster_of(const sid_clustering* c, const char* doc_id, int* cluster);
SID_API sid_status sid_clustering_to_json(const sid_clustering* c, char** json);
SID_API sid_status sid_clustering_save_json(const sid_clustering* c, const char* path);
SID_API sid_status sid_clustering_load_json(const char* path, sid_clustering** out);
SID_API void sid_clustering_free(sid_clustering* c);

/* ---- evaluation -------------------------------------------------------- */

typedef struct sid_report sid_report;

/* labels_csv: path to a "doc_id,class" table. */
SID_API sid_status sid_evaluate(const sid_clustering* c, const char* labels_csv, sid_report** out);
SID_API double sid_report_nmi(const sid_report* r);
SID_API sid_status sid_report_class_score(const sid_report* r, const char* class_name, double* precision,
                                          double* recall, double* f_measure);
SID_API sid_status sid_report_to_json(const sid_report* r, char** json);
SID_API void sid_report_free(sid_report* r);

SID_API sid_status sid_nmi(const int* truth, const int* pred, size_t n, double* out);

/* ---- stage runner ------------------------------------------------------ */

/* command: segment | encode | features | cluster | evaluate | pipeline | synth.
 * config_json: object whose keys mirror the CLI flags. result_json (optional)
 * receives {"summary": {...}, "warnings": [...]}. */
SID_API sid_status sid_run_command(const char* command, const char* config_json, char** result_json);

#ifdef __cplusplus
}
#endif

#endif /* SCRIPTID_SCRIPTID_H */
