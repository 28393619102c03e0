// Copyright 2026 The egohl Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// egohl command line front end. Talks to the library only through egohl.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "egohl/egohl.h"
#include "json.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Buffer {
  egohl_buffer* handle = nullptr;
  ~Buffer() { egohl_buffer_free(handle); }
  std::string str() const {
    return handle == nullptr ? std::string() : std::string(egohl_buffer_data(handle),
                                                           egohl_buffer_size(handle));
  }
};

struct Pipeline {
  egohl_pipeline* handle = nullptr;
  ~Pipeline() { egohl_pipeline_destroy(handle); }
};

class Failure : public std::runtime_error {
 public:
  Failure(egohl_status status, const std::string& what)
      : std::runtime_error(what), status(status) {}
  egohl_status status;
};

void Check(egohl_status status, const char* what) {
  if (status != EGOHL_OK) {
    throw Failure(status, std::string(what) + ": " + egohl_status_name(status) + ": " +
                              egohl_last_error());
  }
}

void WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  out << text;
  if (!out) throw Failure(EGOHL_ERR_IO, "cannot write " + path);
}

struct Globals {
  std::string config;
  std::vector<std::string> sets;
  std::optional<int> parallelism;
  std::string cache_dir;
  std::string output_dir;
  std::string log_level = "info";
};

void Apply(egohl_pipeline* p, const std::string& key, const std::string& value) {
  Check(egohl_pipeline_set(p, key.c_str(), value.c_str()), ("--" + key).c_str());
}

std::string Quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void Open(const Globals& g, Pipeline& p) {
  Check(egohl_set_log_level(g.log_level.c_str()), "--log-level");
  if (g.config.empty()) {
    Check(egohl_pipeline_create(&p.handle), "config");
  } else {
    Check(egohl_pipeline_create_from_file(g.config.c_str(), &p.handle), "config");
  }
  for (const auto& s : g.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      throw Failure(EGOHL_ERR_INVALID_INPUT, "--set expects key=value, got " + s);
    }
    Apply(p.handle, s.substr(0, eq), s.substr(eq + 1));
  }
  if (g.parallelism) Apply(p.handle, "runtime.parallelism", std::to_string(*g.parallelism));
  if (!g.cache_dir.empty()) Apply(p.handle, "runtime.cache_dir", Quote(g.cache_dir));
  if (!g.output_dir.empty()) Apply(p.handle, "runtime.output_dir", Quote(g.output_dir));
}

std::string OutputDir(egohl_pipeline* p) {
  Buffer cfg;
  Check(egohl_pipeline_config_json(p, &cfg.handle), "config");
  return nlohmann::json::parse(cfg.str())["runtime"]["output_dir"].get<std::string>();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"egohl: highlight albums from egocentric vacation footage"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "Pipeline config JSON")->check(CLI::ExistingFile);
  app.add_option("--set", g.sets, "Config override key=value (repeatable)");
  app.add_option("--parallelism", g.parallelism, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--cache", g.cache_dir, "Stage cache directory");
  app.add_option("--output", g.output_dir, "Output directory");
  app.add_option("--log-level", g.log_level, "trace|debug|info|warn|error|off");

  std::string manifest;
  std::optional<int> window;
  std::optional<double> beta;

  auto* score = app.add_subcommand("score", "Per-frame score report");
  score->add_option("--manifest", manifest, "Corpus manifest")->required();
  score->add_option("--window", window, "Shot window W (frames)");
  score->add_option("--beta", beta, "Shot threshold beta");

  std::optional<int> k;
  auto* album = app.add_subcommand("album", "Full pipeline and album export");
  album->add_option("--manifest", manifest, "Corpus manifest")->required();
  album->add_option("--k", k, "Album size")->check(CLI::PositiveNumber);
  album->add_option("--window", window, "Shot window W (frames)");
  album->add_option("--beta", beta, "Shot threshold beta");

  auto* geo = app.add_subcommand("geo", "GPS node aggregation and scoring");
  geo->require_subcommand(1);
  std::string track;
  std::optional<double> d_max, d_min, threshold;
  std::string poi_cache;
  std::string mode_name;
  std::string geojson_out, intervals_out;
  auto* geo_nodes = geo->add_subcommand("nodes", "Aggregate a track into nodes");
  geo_nodes->add_option("--track", track, "GPX or CSV track")->required();
  geo_nodes->add_option("--d-max", d_max, "d_max (km)");
  geo_nodes->add_option("--d-min", d_min, "d_min (km)");
  geo_nodes->add_option("--geojson", geojson_out, "Also write the GeoJSON here");
  auto* geo_score = geo->add_subcommand("score", "Score nodes and derive importance intervals");
  geo_score->add_option("--track", track, "GPX or CSV track")->required();
  geo_score->add_option("--cache", poi_cache, "POI cache directory")->required();
  geo_score->add_option("--threshold", threshold, "Node score threshold");
  geo_score->add_option("--mode", mode_name, "Threshold mode")
      ->check(CLI::IsMember({"absolute", "percentile"}));
  geo_score->add_option("--d-max", d_max, "d_max (km)");
  geo_score->add_option("--d-min", d_min, "d_min (km)");
  geo_score->add_option("--geojson", geojson_out, "Also write the nodes GeoJSON here");
  geo_score->add_option("--intervals", intervals_out, "Also write the interval list here");

  std::string baseline_mode;
  int x = 0;
  auto* baseline = app.add_subcommand("baseline", "Uniform geo or chrono baseline selection");
  baseline->add_option("--manifest", manifest, "Corpus manifest")->required();
  baseline->add_option("--mode", baseline_mode, "geo|chrono")
      ->required()
      ->check(CLI::IsMember({"geo", "chrono"}));
  baseline->add_option("--x", x, "Frames to select")->required()->check(CLI::PositiveNumber);

  std::string dataset, csv_out;
  bool sweep = false;
  auto* eval = app.add_subcommand("eval-crops", "Crop-improvement experiment");
  eval->add_option("--dataset", dataset, "Dataset directory")->required();
  eval->add_flag("--sweep", sweep, "Also sweep lambda1 over 0..1");
  eval->add_option("--csv", csv_out, "Write the sweep curve CSV here");

  std::string frame_id, report_path;
  auto* inspect = app.add_subcommand("inspect", "Component scores of one frame");
  inspect->add_option("--frame", frame_id, "source:index")->required();
  inspect->add_option("--report", report_path, "report.json (default <output>/report.json)");
  inspect->add_option("--manifest", manifest, "Score this corpus first");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    Pipeline p;
    Open(g, p);
    if (window) Apply(p.handle, "shots.window", std::to_string(*window));
    if (beta) Apply(p.handle, "shots.beta", std::to_string(*beta));
    if (d_max) Apply(p.handle, "geo.d_max_km", std::to_string(*d_max));
    if (d_min) Apply(p.handle, "geo.d_min_km", std::to_string(*d_min));
    if (threshold) Apply(p.handle, "geo.node_score_threshold", std::to_string(*threshold));
    if (!mode_name.empty()) Apply(p.handle, "geo.threshold_mode", Quote(mode_name));
    if (k) Apply(p.handle, "rank.album_size", std::to_string(*k));

    Buffer out;
    if (score->parsed()) {
      Check(egohl_run_score(p.handle, manifest.c_str(), &out.handle), "score");
      std::cout << OutputDir(p.handle) << "/report.json\n";
    } else if (album->parsed()) {
      Check(egohl_run_album(p.handle, manifest.c_str(), &out.handle), "album");
      std::cout << out.str() << "\n";
    } else if (geo_nodes->parsed()) {
      Check(egohl_geo_nodes(p.handle, track.c_str(), &out.handle), "geo nodes");
      if (!geojson_out.empty()) WriteFile(geojson_out, out.str() + "\n");
      std::cout << out.str() << "\n";
    } else if (geo_score->parsed()) {
      Check(egohl_geo_score(p.handle, track.c_str(), poi_cache.c_str(), &out.handle),
            "geo score");
      const std::string text = out.str();
      const auto doc = nlohmann::json::parse(text);
      if (!geojson_out.empty()) WriteFile(geojson_out, doc["nodes"].dump(2) + "\n");
      if (!intervals_out.empty()) WriteFile(intervals_out, doc["intervals"].dump(2) + "\n");
      std::cout << text << "\n";
    } else if (baseline->parsed()) {
      const auto m = baseline_mode == "geo" ? EGOHL_BASELINE_GEO : EGOHL_BASELINE_CHRONO;
      Check(egohl_baseline(p.handle, manifest.c_str(), m, x, &out.handle), "baseline");
      std::cout << out.str() << "\n";
    } else if (eval->parsed()) {
      Buffer csv;
      Check(egohl_eval_crops(p.handle, dataset.c_str(), sweep ? 1 : 0, &out.handle,
                             csv_out.empty() ? nullptr : &csv.handle),
            "eval-crops");
      if (!csv_out.empty()) WriteFile(csv_out, csv.str());
      std::cout << out.str() << "\n";
    } else if (inspect->parsed()) {
      const auto colon = frame_id.rfind(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == frame_id.size()) {
        std::cerr << "--frame expects source:index\n";
        return kExitUsage;
      }
      long long index = 0;
      try {
        size_t used = 0;
        index = std::stoll(frame_id.substr(colon + 1), &used);
        if (used != frame_id.size() - colon - 1) throw std::invalid_argument("index");
      } catch (const std::exception&) {
        std::cerr << "--frame expects source:index\n";
        return kExitUsage;
      }
      if (!manifest.empty()) {
        Buffer report;
        Check(egohl_run_score(p.handle, manifest.c_str(), &report.handle), "score");
      }
      if (report_path.empty()) report_path = OutputDir(p.handle) + "/report.json";
      Check(egohl_inspect(report_path.c_str(), frame_id.substr(0, colon).c_str(), index,
                          &out.handle),
            "inspect");
      std::cout << out.str() << "\n";
    }
  } catch (const Failure& e) {
    std::cerr << "egohl: " << e.what() << "\n";
    return e.status == EGOHL_ERR_INVALID_INPUT && std::string(e.what()).rfind("--", 0) == 0
               ? kExitUsage
               : kExitFailure;
  }
  return 0;
}
