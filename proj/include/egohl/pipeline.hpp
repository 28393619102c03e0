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

#ifndef EGOHL_PIPELINE_HPP_
#define EGOHL_PIPELINE_HPP_

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "egohl/config.hpp"
#include "egohl/geo.hpp"
#include "egohl/ingest.hpp"
#include "egohl/poi.hpp"
#include "egohl/ranking.hpp"
#include "json.hpp"

namespace egohl {

inline constexpr const char* kVersion = "0.1.0";

enum class RunMode { kScore, kAlbum };

struct StageStats {
  size_t hits = 0;
  size_t misses = 0;
};

struct PipelineRun {
  nlohmann::json report;
  HighlightAlbum album;
  std::vector<ExportedEntry> exported;
  std::filesystem::path report_path;
  std::filesystem::path album_path;  // empty in score mode
  // Cache statistics per stage name. Logged, never written to reports.
  std::map<std::string, StageStats> stages;
  size_t frames_decoded = 0;
};

// HTTP client from the config when its API key variable is set, else null
// (cache-only lookups).
std::unique_ptr<geo::PoiClient> MakePoiClient(const PoiConfig& cfg);

struct GeoStage {
  std::vector<geo::GeoNode> nodes;
  std::vector<geo::TimeInterval> intervals;
  double threshold = 0.0;
  geo::NodeScoringSummary summary;
};

// Nodes only (no POI lookups).
std::vector<geo::GeoNode> GeoNodes(const std::filesystem::path& track,
                                   const geo::GeoConfig& cfg);

// Aggregates, scores through the POI cache at `poi_cache_dir` and derives the
// importance intervals.
GeoStage GeoScore(const std::filesystem::path& track, const PipelineConfig& cfg,
                  const std::filesystem::path& poi_cache_dir, geo::PoiClient* client,
                  int parallelism);

// Stages: geo filter (when the manifest has a track), frame hashing,
// descriptors, gamma/shots, segmentation + aesthetics, head tilt, ranking and,
// in album mode, export. Writes report.json (and album/ in album mode) under
// cfg.runtime.output_dir. `client` overrides MakePoiClient when non-null.
PipelineRun RunPipeline(const CorpusManifest& manifest, const PipelineConfig& cfg,
                        RunMode mode, geo::PoiClient* client = nullptr);

// The report entry for one frame. Throws Error(kLookup) when absent.
nlohmann::json InspectFrame(const nlohmann::json& report, const std::string& source_id,
                            int64_t frame_index);

enum class BaselineMode { kGeo, kChrono };

// Geo mode samples the manifest's track over all listed frames; chrono mode
// samples the frames kept by the geo filter (all frames without a track).
// {"mode", "x", "geo_filtered", "frames":[{"position", "source_id",
// "frame_index", "timestamp"}]}.
nlohmann::json RunBaseline(const CorpusManifest& manifest, const PipelineConfig& cfg,
                           BaselineMode mode, int x, geo::PoiClient* client = nullptr);

}  // namespace egohl

#endif  // EGOHL_PIPELINE_HPP_
