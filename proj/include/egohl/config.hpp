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

#ifndef EGOHL_CONFIG_HPP_
#define EGOHL_CONFIG_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include "egohl/aesthetics.hpp"
#include "egohl/geo.hpp"
#include "egohl/gist.hpp"
#include "egohl/head_tilt.hpp"
#include "egohl/ingest.hpp"
#include "egohl/ranking.hpp"
#include "egohl/segmentation.hpp"
#include "egohl/shots.hpp"
#include "json.hpp"

namespace egohl {

struct PoiConfig {
  std::string base_url = "https://api.yelp.com";
  std::string path = "/v3/businesses/search";
  // Name of the environment variable holding the API key. Without a key only
  // the on-disk cache is consulted.
  std::string api_key_env = "EGOHL_POI_API_KEY";
  int radius_m = 500;
  std::string category;
  int limit = 50;
  int timeout_s = 10;
};

// Settings that change how a run executes but never what it produces.
struct RuntimeConfig {
  int parallelism = 1;
  std::filesystem::path cache_dir;  // empty disables stage caching
  std::filesystem::path output_dir = "egohl_out";
};

struct PipelineConfig {
  AnalysisConfig analysis;
  geo::GeoConfig geo;
  PoiConfig poi;
  GistConfig gist;
  ShotConfig shots;
  SegmentationConfig segmentation;
  ThirdsGeometry thirds;
  std::filesystem::path colorbins;  // empty: built-in table
  VibrancyConfig vibrancy;
  SymmetryConfig symmetry;
  TiltConfig tilt;
  RankConfig rank;
  RuntimeConfig runtime;

  // Missing keys take defaults; unknown keys throw Error(kInvalidInput).
  // Relative paths resolve against `base_dir`.
  static PipelineConfig FromJson(const nlohmann::json& j,
                                 const std::filesystem::path& base_dir = {});
  static PipelineConfig Load(const std::filesystem::path& path);

  // Everything, runtime section included.
  nlohmann::json ToJson() const;
  // The part echoed into reports: ToJson() without "runtime".
  nlohmann::json ProvenanceJson() const;
  // SHA-256 over the provenance JSON and the colour bin table contents.
  std::string Hash() const;

  // `key` is a dotted path such as "rank.lambda1"; `value` is parsed as JSON
  // and falls back to a plain string.
  void Override(std::string_view key, std::string_view value);

  void Validate() const;
  ColorBinTable LoadColorBins() const;
  AestheticsSettings Aesthetics() const;
};

}  // namespace egohl

#endif  // EGOHL_CONFIG_HPP_
