// Exercises the shared library strictly through the public C header.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "scriptid/scriptid.h"

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() / ("scriptid_capi_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

void put(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << text;
}

std::string take(char* s) {
  std::string out = s ? s : "";
  sid_string_free(s);
  return out;
}

sid_sequence* parse(const char* text) {
  sid_sequence* s = nullptr;
  REQUIRE(sid_sequence_parse(text, &s) == SID_OK);
  return s;
}

}  // namespace

TEST_CASE("status names and last error") {
  CHECK(std::strcmp(sid_status_name(SID_OK), "OK") == 0);
  CHECK(std::strcmp(sid_status_name(SID_ERR_PARSE), "Parse") == 0);
  CHECK(sid_status_is_config_error(SID_ERR_INVALID_K));
  CHECK_FALSE(sid_status_is_config_error(SID_ERR_IO));

  sid_sequence* s = nullptr;
  CHECK(sid_sequence_parse("01x2", &s) == SID_ERR_PARSE);
  CHECK(s == nullptr);
  CHECK(std::strlen(sid_last_error_message()) > 0);

  CHECK(sid_sequence_parse(nullptr, &s) == SID_ERR_INVALID_ARGUMENT);
  CHECK(sid_image_load("/nonexistent/file.png", SID_INK_DARK, nullptr) == SID_ERR_INVALID_ARGUMENT);

  sid_image* img = nullptr;
  CHECK(sid_image_load("/nonexistent/file.png", SID_INK_DARK, &img) == SID_ERR_IO);
}

TEST_CASE("image segmentation and encoding") {
  // two blobs on one line: a tall one and a short one
  const int w = 9, h = 8;
  std::vector<uint8_t> bits(w * h, 0);
  for (int y = 0; y < 8; ++y)
    for (int x = 0; x < 3; ++x) bits[y * w + x] = 1;
  for (int y = 4; y < 8; ++y)
    for (int x = 5; x < 8; ++x) bits[y * w + x] = 1;

  sid_image* img = nullptr;
  REQUIRE(sid_image_from_bits(w, h, bits.data(), &img) == SID_OK);
  CHECK(sid_image_width(img) == w);
  CHECK(sid_image_height(img) == h);

  sid_segmentation* seg = nullptr;
  REQUIRE(sid_segment(img, nullptr, &seg) == SID_OK);
  CHECK(sid_segmentation_band_count(seg) == 1);
  REQUIRE(sid_segmentation_blob_count(seg) == 2);
  sid_blob b{};
  REQUIRE(sid_segmentation_blob(seg, 1, &b) == SID_OK);
  CHECK(b.x_min == 5);
  CHECK(b.area == 12);
  CHECK(sid_segmentation_blob(seg, 2, &b) == SID_ERR_OUT_OF_RANGE);

  sid_sequence* seq = nullptr;
  REQUIRE(sid_encode(seg, nullptr, &seq) == SID_OK);
  CHECK(sid_sequence_length(seq) == 2);

  sid_sequence_free(seq);
  sid_segmentation_free(seg);
  sid_image_free(img);
}

TEST_CASE("sequence round trip and features") {
  TempDir tmp;
  sid_sequence* s = parse("0001 1222");
  CHECK(sid_sequence_length(s) == 8);
  uint8_t buf[8];
  CHECK(sid_sequence_codes(s, buf, 8) == 8);
  CHECK(buf[3] == 1);
  CHECK(buf[7] == 2);

  const auto file = (tmp.path / "s.txt").string();
  REQUIRE(sid_sequence_save(s, file.c_str()) == SID_OK);
  sid_sequence* back = nullptr;
  REQUIRE(sid_sequence_load(file.c_str(), &back) == SID_OK);
  CHECK(sid_sequence_length(back) == 8);

  double f[SID_FEATURE_COUNT];
  int degenerate = -1;
  REQUIRE(sid_features(s, SID_ALBP_NORMALIZED, f, &degenerate) == SID_OK);
  CHECK(degenerate == 0);
  double albp = 0;
  for (int i = 11; i < SID_FEATURE_COUNT; ++i) albp += f[i];
  CHECK(albp == doctest::Approx(1.0));
  CHECK(std::strcmp(sid_feature_name(0), "sre") == 0);
  CHECK(sid_feature_name(SID_FEATURE_COUNT) == nullptr);

  sid_sequence* tiny = parse("012");
  REQUIRE(sid_features(tiny, SID_ALBP_COUNTS, f, &degenerate) == SID_OK);
  CHECK(degenerate == 1);

  sid_sequence* empty = nullptr;
  REQUIRE(sid_sequence_from_codes(buf, 0, &empty) == SID_OK);
  CHECK(sid_features(empty, SID_ALBP_NORMALIZED, f, nullptr) == SID_ERR_EMPTY_SEQUENCE);
  sid_sequence_free(empty);
  uint8_t bad = 4;
  sid_sequence* rejected = nullptr;
  CHECK(sid_sequence_from_codes(&bad, 1, &rejected) == SID_ERR_INVALID_ARGUMENT);
  CHECK(rejected == nullptr);

  sid_sequence_free(tiny);
  sid_sequence_free(back);
  sid_sequence_free(s);
}

TEST_CASE("cluster and evaluate three separated documents") {
  TempDir tmp;
  const char* texts[] = {"0000000011111111000000001111111100000000", "3333333322222222333333332222222233333333",
                         "0123012301230123012301230123012301230123", "0000000111111110000000011111111000000001",
                         "3333333222222223333333222222223333333322", "0123012301230123012301230123012301230120"};
  const char* ids[] = {"a1", "b1", "c1", "a2", "b2", "c2"};

  sid_dataset* ds = nullptr;
  REQUIRE(sid_dataset_create(&ds) == SID_OK);
  double f[SID_FEATURE_COUNT];
  for (int i = 0; i < 6; ++i) {
    sid_sequence* s = parse(texts[i]);
    REQUIRE(sid_features(s, SID_ALBP_NORMALIZED, f, nullptr) == SID_OK);
    REQUIRE(sid_dataset_add(ds, ids[i], f) == SID_OK);
    sid_sequence_free(s);
  }
  CHECK(sid_dataset_add(ds, "a1", f) != SID_OK);
  CHECK(sid_dataset_size(ds) == 6);

  const auto csv = (tmp.path / "features.csv").string();
  REQUIRE(sid_dataset_save_csv(ds, csv.c_str()) == SID_OK);
  sid_dataset* loaded = nullptr;
  REQUIRE(sid_dataset_load_csv(csv.c_str(), &loaded) == SID_OK);
  CHECK(sid_dataset_size(loaded) == 6);

  sid_cluster_params p;
  sid_cluster_params_default(&p);
  CHECK(sid_status_is_config_error(sid_cluster_params_profile("nope", &p)));
  REQUIRE(sid_cluster_params_profile("db1", &p) == SID_OK);
  CHECK(p.h == 15);
  CHECK(p.bandwidth == 4);

  sid_cluster_params bad = p;
  bad.k_target = 0;
  sid_clustering* c = nullptr;
  CHECK(sid_status_is_config_error(sid_cluster(loaded, &bad, &c)));

  p.k_target = 3;
  p.bandwidth = 6;
  p.method = SID_METHOD_GAICDA;
  REQUIRE(sid_cluster(loaded, &p, &c) == SID_OK);
  CHECK(sid_clustering_size(c) == 6);
  CHECK(sid_clustering_k(c) >= 1);
  CHECK(sid_clustering_k(c) <= 3);
  CHECK(sid_clustering_fitness(c) > 0.0);
  sid_clustering_free(c);

  // the baselines always produce exactly k clusters
  p.method = SID_METHOD_AVERAGE_LINKAGE;
  REQUIRE(sid_cluster(loaded, &p, &c) == SID_OK);
  CHECK(sid_clustering_k(c) == 3);
  sid_clustering_free(c);

  p.method = SID_METHOD_KMEANS;
  REQUIRE(sid_cluster(loaded, &p, &c) == SID_OK);
  CHECK(sid_clustering_k(c) == 3);
  int ca = -1, cb = -1;
  REQUIRE(sid_clustering_cluster_of(c, "a1", &ca) == SID_OK);
  REQUIRE(sid_clustering_cluster_of(c, "a2", &cb) == SID_OK);
  CHECK(ca == cb);
  CHECK(sid_clustering_cluster_of(c, "zz", &ca) != SID_OK);
  const auto cj = (tmp.path / "clustering.json").string();
  REQUIRE(sid_clustering_save_json(c, cj.c_str()) == SID_OK);
  sid_clustering* c2 = nullptr;
  REQUIRE(sid_clustering_load_json(cj.c_str(), &c2) == SID_OK);
  char* j1 = nullptr;
  char* j2 = nullptr;
  REQUIRE(sid_clustering_to_json(c, &j1) == SID_OK);
  REQUIRE(sid_clustering_to_json(c2, &j2) == SID_OK);
  CHECK(take(j1) == take(j2));

  put(tmp.path / "labels.csv", "doc_id,class\na1,A\na2,A\nb1,B\nb2,B\nc1,C\nc2,C\n");
  sid_report* r = nullptr;
  REQUIRE(sid_evaluate(c2, (tmp.path / "labels.csv").string().c_str(), &r) == SID_OK);
  CHECK(sid_report_nmi(r) == doctest::Approx(1.0));
  double pr, rc, fm;
  REQUIRE(sid_report_class_score(r, "B", &pr, &rc, &fm) == SID_OK);
  CHECK(fm == doctest::Approx(1.0));
  CHECK(sid_report_class_score(r, "Z", &pr, &rc, &fm) == SID_ERR_UNKNOWN_CLASS);
  char* rj = nullptr;
  REQUIRE(sid_report_to_json(r, &rj) == SID_OK);
  CHECK(take(rj).find("nmi") != std::string::npos);

  sid_report_free(r);
  sid_clustering_free(c2);
  sid_clustering_free(c);
  sid_dataset_free(loaded);
  sid_dataset_free(ds);
}

TEST_CASE("nmi over raw label arrays") {
  const int truth[] = {0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 2, 2, 2};
  const int pred[] = {0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 2, 2, 2};
  double v = 0;
  REQUIRE(sid_nmi(truth, pred, 20, &v) == SID_OK);
  CHECK(std::fabs(v - 0.7782) < 1e-4);
  CHECK(sid_nmi(truth, pred, 0, &v) != SID_OK);
}

TEST_CASE("stage runner") {
  TempDir tmp;
  const std::string data = (tmp.path / "data").string();
  char* out = nullptr;
  REQUIRE(sid_run_command("synth", ("{\"synth\":{\"preset\":\"db1\"},\"seed\":3,\"out\":\"" + data + "\"}").c_str(),
                          &out) == SID_OK);
  CHECK(take(out).find("summary") != std::string::npos);

  const std::string cfg = "{\"input\":\"" + data + "\",\"profile\":\"db1\",\"k\":3,\"out\":\"" +
                          (tmp.path / "run").string() + "\"}";
  REQUIRE(sid_run_command("pipeline", cfg.c_str(), &out) == SID_OK);
  take(out);
  CHECK(fs::exists(tmp.path / "run" / "report.json"));

  CHECK(sid_run_command("pipeline", "{not json", nullptr) == SID_ERR_CONFIG);
  CHECK(sid_run_command("frobnicate", "{}", nullptr) == SID_ERR_CONFIG);
  CHECK(sid_status_is_config_error(sid_run_command("pipeline", "{\"input\":\"x\",\"k\":-1}", nullptr)));
}
