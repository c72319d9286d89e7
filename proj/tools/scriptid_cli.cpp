// Command-line front end. Builds a JSON config from an optional --config file
// plus flag overrides and hands it to sid_run_command.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "scriptid/scriptid.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

using Json = nlohmann::ordered_json;

struct Flags {
  std::string config;
  std::optional<std::string> input, input_type, labels, clustering, out, ink, albp, profile, method, ordering, preset;
  std::optional<int> h, T, k, restarts, runs, min_gap;
  std::optional<long long> seed;
  std::optional<std::size_t> min_blob_area;
  std::optional<double> flat_tolerance, eps_fraction;
  bool render = false;
  bool include_degenerate = false;
};

void add_flags(CLI::App* cmd, Flags& f) {
  // -h is taken by the neighbourhood size.
  cmd->set_help_flag("--help", "print this help");
  cmd->add_option("--config", f.config, "JSON config file; flags override its keys");
  cmd->add_option("--input", f.input, "input directory or file");
  cmd->add_option("--input-type", f.input_type, "images|coded")->check(CLI::IsMember({"images", "coded"}));
  cmd->add_option("--labels", f.labels, "labels.csv (doc_id,class)");
  cmd->add_option("--clustering", f.clustering, "clustering.json for evaluate");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--ink", f.ink, "dark|light")->check(CLI::IsMember({"dark", "light"}));
  cmd->add_option("--albp", f.albp, "counts|normalized")->check(CLI::IsMember({"counts", "normalized"}));
  cmd->add_option("--profile", f.profile, "db1|db2")->check(CLI::IsMember({"db1", "db2"}));
  cmd->add_option("--method", f.method, "gaicda|kmeans|average_linkage");
  cmd->add_option("--ordering", f.ordering, "input|rcm");
  cmd->add_option("--h", f.h, "nearest neighbours per document");
  cmd->add_option("--T", f.T, "identifier bandwidth");
  cmd->add_option("--k", f.k, "target number of clusters");
  cmd->add_option("--seed", f.seed, "random seed");
  cmd->add_option("--restarts", f.restarts, "k-means restarts");
  cmd->add_option("--runs", f.runs, "seeded repetitions in pipeline");
  cmd->add_option("--min-gap", f.min_gap, "line band bridging gap");
  cmd->add_option("--min-blob-area", f.min_blob_area, "speckle filter in pixels");
  cmd->add_option("--flat-tolerance", f.flat_tolerance, "relative height spread below which a document is flat");
  cmd->add_option("--eps-fraction", f.eps_fraction, "mid-line margin as a fraction of band height");
  cmd->add_flag("--include-degenerate", f.include_degenerate, "cluster sequences shorter than 4 symbols");
  cmd->add_option("--preset", f.preset, "synth preset: db1|db2");
  cmd->add_flag("--render", f.render, "synth: also render PGM images");
}

Json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw CLI::ValidationError("--config", std::string("invalid JSON: ") + e.what());
  }
}

Json merge(const Flags& f) {
  Json j = f.config.empty() ? Json::object() : load_config(f.config);
  if (!j.is_object()) throw CLI::ValidationError("--config", "config must be a JSON object");
  // A profile given on the command line outranks h/T from the file.
  if (f.profile) {
    if (!f.h) j.erase("h");
    if (!f.T) j.erase("T");
  }
  auto set = [&](const char* key, const auto& opt) {
    if (opt) j[key] = *opt;
  };
  set("input", f.input);
  set("input_type", f.input_type);
  set("labels", f.labels);
  set("clustering", f.clustering);
  set("out", f.out);
  set("ink", f.ink);
  set("albp", f.albp);
  set("profile", f.profile);
  set("method", f.method);
  set("ordering", f.ordering);
  set("h", f.h);
  set("T", f.T);
  set("k", f.k);
  set("seed", f.seed);
  set("restarts", f.restarts);
  set("runs", f.runs);
  set("min_gap", f.min_gap);
  set("min_blob_area", f.min_blob_area);
  set("flat_tolerance", f.flat_tolerance);
  set("eps_fraction", f.eps_fraction);
  if (f.include_degenerate) j["include_degenerate"] = true;
  if (f.preset || f.render) {
    Json& s = j["synth"];
    if (s.is_null()) s = Json::object();
    if (f.preset) s["preset"] = *f.preset;
    if (f.render) s["render"] = true;
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Script identification of short text labels by clustering texture features"};
  app.set_help_flag("--help", "print this help");
  app.require_subcommand(1);
  Flags flags;
  const char* commands[][2] = {
      {"segment", "split images into line bands and glyph blobs"},
      {"encode", "map segmented images to coded sequences"},
      {"features", "compute run-length and ALBP features"},
      {"cluster", "cluster a feature table"},
      {"evaluate", "score a clustering against labels"},
      {"pipeline", "run every stage and compare methods"},
      {"synth", "generate a synthetic labelled corpus"},
  };
  for (const auto& [name, help] : commands) add_flags(app.add_subcommand(name, help), flags);

  std::string command;
  Json config;
  try {
    app.parse(argc, argv);
    command = app.get_subcommands().front()->get_name();
    config = merge(flags);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  char* result = nullptr;
  const sid_status st = sid_run_command(command.c_str(), config.dump().c_str(), &result);
  if (st != SID_OK) {
    std::cerr << "error: " << sid_last_error_message() << "\n";
    return sid_status_is_config_error(st) ? kExitConfig : kExitData;
  }
  const Json r = Json::parse(result);
  sid_string_free(result);
  for (const auto& w : r["warnings"]) std::cerr << "warning: " << w.get<std::string>() << "\n";
  std::cout << r["summary"].dump(2) << "\n";
  return 0;
}
