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

#include "egohl/egohl.h"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <fstream>
#include <memory>
#include <string>

#include "egohl/config.hpp"
#include "egohl/error.hpp"
#include "egohl/eval.hpp"
#include "egohl/geo.hpp"
#include "egohl/gps_io.hpp"
#include "egohl/pipeline.hpp"

struct egohl_pipeline {
  egohl::PipelineConfig config;
};

struct egohl_buffer {
  std::string data;
};

namespace {

thread_local std::string g_last_error;

egohl_status ToStatus(egohl::ErrorCode code) {
  switch (code) {
    case egohl::ErrorCode::kInvalidInput: return EGOHL_ERR_INVALID_INPUT;
    case egohl::ErrorCode::kEmptyInput: return EGOHL_ERR_EMPTY_INPUT;
    case egohl::ErrorCode::kLookup: return EGOHL_ERR_LOOKUP;
    case egohl::ErrorCode::kIo: return EGOHL_ERR_IO;
    case egohl::ErrorCode::kDecode: return EGOHL_ERR_DECODE;
    case egohl::ErrorCode::kPipeline: return EGOHL_ERR_PIPELINE;
  }
  return EGOHL_ERR_INTERNAL;
}

template <typename F>
egohl_status Guard(F&& body) {
  g_last_error.clear();
  try {
    body();
    return EGOHL_OK;
  } catch (const egohl::Error& e) {
    g_last_error = e.what();
    return ToStatus(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return EGOHL_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return EGOHL_ERR_INTERNAL;
  }
}

void Require(const void* p, const char* what) {
  if (p == nullptr) {
    egohl::Throw(egohl::ErrorCode::kInvalidInput, std::string(what) + " must not be null");
  }
}

void Emit(egohl_buffer** out, std::string data) {
  *out = new egohl_buffer{std::move(data)};
}

void EnsureLogger() {
  static const bool once = [] {
    auto logger = spdlog::stderr_color_mt("egohl");
    spdlog::set_default_logger(logger);
    return true;
  }();
  (void)once;
}

}  // namespace

extern "C" {

const char* egohl_version(void) { return egohl::kVersion; }

const char* egohl_last_error(void) { return g_last_error.c_str(); }

const char* egohl_status_name(egohl_status status) {
  switch (status) {
    case EGOHL_OK: return "ok";
    case EGOHL_ERR_INVALID_INPUT: return "invalid_input";
    case EGOHL_ERR_EMPTY_INPUT: return "empty_input";
    case EGOHL_ERR_LOOKUP: return "lookup";
    case EGOHL_ERR_IO: return "io";
    case EGOHL_ERR_DECODE: return "decode";
    case EGOHL_ERR_PIPELINE: return "pipeline";
    case EGOHL_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

egohl_status egohl_set_log_level(const char* level) {
  return Guard([&] {
    Require(level, "level");
    const auto parsed = spdlog::level::from_str(level);
    if (parsed == spdlog::level::off && std::string(level) != "off") {
      egohl::Throw(egohl::ErrorCode::kInvalidInput, std::string("unknown log level ") + level);
    }
    EnsureLogger();
    spdlog::set_level(parsed);
  });
}

const char* egohl_buffer_data(const egohl_buffer* buffer) {
  return buffer == nullptr ? nullptr : buffer->data.c_str();
}

size_t egohl_buffer_size(const egohl_buffer* buffer) {
  return buffer == nullptr ? 0 : buffer->data.size();
}

void egohl_buffer_free(egohl_buffer* buffer) { delete buffer; }

egohl_status egohl_pipeline_create(egohl_pipeline** out) {
  return Guard([&] {
    Require(out, "out");
    EnsureLogger();
    *out = new egohl_pipeline{};
  });
}

egohl_status egohl_pipeline_create_from_file(const char* config_path, egohl_pipeline** out) {
  return Guard([&] {
    Require(config_path, "config_path");
    Require(out, "out");
    EnsureLogger();
    auto p = std::make_unique<egohl_pipeline>();
    p->config = egohl::PipelineConfig::Load(config_path);
    *out = p.release();
  });
}

egohl_status egohl_pipeline_create_from_json(const char* config_json, egohl_pipeline** out) {
  return Guard([&] {
    Require(config_json, "config_json");
    Require(out, "out");
    EnsureLogger();
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(config_json);
    } catch (const nlohmann::json::exception& e) {
      egohl::Throw(egohl::ErrorCode::kInvalidInput, std::string("config: ") + e.what());
    }
    auto p = std::make_unique<egohl_pipeline>();
    p->config = egohl::PipelineConfig::FromJson(j);
    *out = p.release();
  });
}

void egohl_pipeline_destroy(egohl_pipeline* pipeline) { delete pipeline; }

egohl_status egohl_pipeline_set(egohl_pipeline* pipeline, const char* key, const char* value) {
  return Guard([&] {
    Require(pipeline, "pipeline");
    Require(key, "key");
    Require(value, "value");
    egohl::PipelineConfig next = pipeline->config;
    next.Override(key, value);
    pipeline->config = std::move(next);
  });
}

egohl_status egohl_pipeline_config_json(const egohl_pipeline* pipeline, egohl_buffer** out) {
  return Guard([&] {
    Require(pipeline, "pipeline");
    Require(out, "out");
    Emit(out, pipeline->config.ToJson().dump(2));
  });
}

egohl_status egohl_pipeline_config_hash(const egohl_pipeline* pipeline, egohl_buffer** out) {
  return Guard([&] {
    Require(pipeline, "pipeline");
    Require(out, "out");
    Emit(out, pipeline->config.Hash());
  });
}

egohl_status egohl_run_score(egohl_pipeline* pipeline, const char* manifest_path,
                             egohl_buffer** report) {
  return Guard([&] {
    Require(pipeline, "pipeline");
    Require(manifest_path, "manifest_path");
    Require(report, "report");
    const auto manifest = egohl::CorpusManifest::Load(manifest_path);
    const auto run = egohl::RunPipeline(manifest, pipeline->config, egohl::RunMode::kScore);
    Emit(report, run.report.dump(2));
  });
}

egohl_status egohl_run_album(egohl_pipeline* pipeline, const char* manifest_path,
                             egohl_buffer** summary) {
  return Guard([&] {
    Require(pipeline, "pipeline");
    Require(manifest_path, "manifest_path");
    Require(summary, "summary");
    const auto manifest = egohl::CorpusManifest::Load(manifest_path);
    const auto run = egohl::RunPipeline(manifest, pipeline->config, egohl::RunMode::kAlbum);
    const nlohmann::json j = {{"report_path", run.report_path.string()},
                              {"album_path", run.album_path.string()},
                              {"entries", run.album.entries.size()},
                              {"truncated", run.album.truncated}};
    Emit(summary, j.dump(2));
  });
}

egohl_status egohl_geo_nodes(const egohl_pipeline* pipeline, const char* track_path,
                             egohl_buffer** geojson) {
  return Guard([&] {
    Require(pipeline, "pipeline");
    Require(track_path, "track_path");
    Require(geojson, "geojson");
    const auto nodes = egohl::GeoNodes(track_path, pipeline->config.geo);
    Emit(geojson, egohl::geo::NodesToGeoJson(nodes).dump(2));
  });
}

egohl_status egohl_geo_score(const egohl_pipeline* pipeline, const char* track_path,
                             const char* poi_cache_dir, egohl_buffer** out) {
  return Guard([&] {
    Require(pipeline, "pipeline");
    Require(track_path, "track_path");
    Require(poi_cache_dir, "poi_cache_dir");
    Require(out, "out");
    const auto& cfg = pipeline->config;
    auto client = egohl::MakePoiClient(cfg.poi);
    const auto g = egohl::GeoScore(track_path, cfg, poi_cache_dir, client.get(),
                                   cfg.runtime.parallelism);
    const nlohmann::json j = {{"nodes", egohl::geo::NodesToGeoJson(g.nodes)},
                              {"intervals", egohl::geo::IntervalsToJson(g.intervals)},
                              {"threshold", g.threshold},
                              {"lookup_failures", g.summary.lookup_failures}};
    Emit(out, j.dump(2));
  });
}

egohl_status egohl_baseline(const egohl_pipeline* pipeline, const char* manifest_path,
                            egohl_baseline_mode mode, int x, egohl_buffer** out) {
  return Guard([&] {
    Require(pipeline, "pipeline");
    Require(manifest_path, "manifest_path");
    Require(out, "out");
    if (mode != EGOHL_BASELINE_GEO && mode != EGOHL_BASELINE_CHRONO) {
      egohl::Throw(egohl::ErrorCode::kInvalidInput, "baseline: unknown mode");
    }
    const auto manifest = egohl::CorpusManifest::Load(manifest_path);
    const auto j = egohl::RunBaseline(
        manifest, pipeline->config,
        mode == EGOHL_BASELINE_GEO ? egohl::BaselineMode::kGeo : egohl::BaselineMode::kChrono,
        x);
    Emit(out, j.dump(2));
  });
}

egohl_status egohl_eval_crops(const egohl_pipeline* pipeline, const char* dataset_dir,
                              int sweep, egohl_buffer** report, egohl_buffer** csv) {
  return Guard([&] {
    Require(pipeline, "pipeline");
    Require(dataset_dir, "dataset_dir");
    Require(report, "report");
    const auto& cfg = pipeline->config;
    const auto cases = egohl::eval::LoadCropDataset(dataset_dir);
    if (cases.empty()) {
      egohl::Throw(egohl::ErrorCode::kEmptyInput,
                   std::string("no crop cases under ") + dataset_dir);
    }
    const auto scored = egohl::eval::ScoreCases(cases, cfg.analysis, cfg.Aesthetics(),
                                                cfg.runtime.parallelism);
    const auto at_config =
        egohl::eval::Improvement(scored, cfg.rank.lambda1, cfg.rank.lambda2);
    nlohmann::json j = at_config.ToJson();
    j["excluded_cases"] = scored.excluded;
    nlohmann::json per_case = nlohmann::json::array();
    for (const auto& c : scored.cases) {
      per_case.push_back({{"case", c.dataset_id}, {"crops", c.crops.size()}});
    }
    j["cases"] = per_case;
    std::string curve_csv;
    if (sweep != 0) {
      const auto curve = egohl::eval::LambdaSweep(scored);
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : curve) arr.push_back(r.ToJson());
      j["sweep"] = arr;
      curve_csv = egohl::eval::SweepCsv(curve);
    }
    Emit(report, j.dump(2));
    if (csv != nullptr) Emit(csv, curve_csv);
  });
}

egohl_status egohl_inspect(const char* report_path, const char* source_id,
                           long long frame_index, egohl_buffer** out) {
  return Guard([&] {
    Require(report_path, "report_path");
    Require(source_id, "source_id");
    Require(out, "out");
    std::ifstream in(report_path);
    if (!in) egohl::Throw(egohl::ErrorCode::kIo, std::string("cannot open ") + report_path);
    nlohmann::json report;
    try {
      report = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      egohl::Throw(egohl::ErrorCode::kInvalidInput, std::string("report: ") + e.what());
    }
    Emit(out, egohl::InspectFrame(report, source_id, frame_index).dump(2));
  });
}

egohl_status egohl_haversine_km(double lat1, double lon1, double lat2, double lon2,
                                double* out_km) {
  return Guard([&] {
    Require(out_km, "out_km");
    egohl::geo::GpsPoint a, b;
    a.lat = lat1;
    a.lon = lon1;
    b.lat = lat2;
    b.lon = lon2;
    egohl::geo::ValidatePoint(a);
    egohl::geo::ValidatePoint(b);
    *out_km = egohl::geo::HaversineKm(a, b);
  });
}

}  // extern "C"
