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

#include "egohl/config.hpp"

#include <fstream>

#include "egohl/error.hpp"
#include "egohl/hashing.hpp"

namespace egohl {
namespace {

using nlohmann::json;

void RejectUnknown(const json& given, const json& known, const std::string& where) {
  if (!given.is_object()) {
    Throw(ErrorCode::kInvalidInput, "config: " + (where.empty() ? "root" : where) +
                                        " must be an object");
  }
  for (const auto& [key, value] : given.items()) {
    const std::string path = where.empty() ? key : where + "." + key;
    if (!known.contains(key)) Throw(ErrorCode::kInvalidInput, "config: unknown key " + path);
    if (known[key].is_object()) RejectUnknown(value, known[key], path);
  }
}

const char* ModeName(geo::ThresholdMode m) {
  return m == geo::ThresholdMode::kPercentile ? "percentile" : "absolute";
}

geo::ThresholdMode ParseMode(const std::string& s) {
  if (s == "absolute") return geo::ThresholdMode::kAbsolute;
  if (s == "percentile") return geo::ThresholdMode::kPercentile;
  Throw(ErrorCode::kInvalidInput, "config: geo.threshold_mode must be absolute or percentile");
}

std::filesystem::path Resolve(const std::string& p, const std::filesystem::path& base) {
  if (p.empty()) return {};
  std::filesystem::path path = p;
  return path.is_absolute() || base.empty() ? path : base / path;
}

}  // namespace

json PipelineConfig::ToJson() const {
  json j = ProvenanceJson();
  j["runtime"] = {{"parallelism", runtime.parallelism},
                  {"cache_dir", runtime.cache_dir.generic_string()},
                  {"output_dir", runtime.output_dir.generic_string()}};
  return j;
}

json PipelineConfig::ProvenanceJson() const {
  json j;
  j["analysis"] = {{"max_side", analysis.max_side}};
  j["geo"] = {{"d_max_km", geo.d_max_km},
              {"d_min_km", geo.d_min_km},
              {"speed_reference_ms", geo.speed_reference_ms},
              {"node_score_threshold", geo.node_score_threshold},
              {"threshold_mode", ModeName(geo.threshold_mode)},
              {"interval_merge_gap_s", geo.interval_merge_gap_s}};
  j["poi"] = {{"base_url", poi.base_url},   {"path", poi.path},
              {"api_key_env", poi.api_key_env}, {"radius_m", poi.radius_m},
              {"category", poi.category}, {"limit", poi.limit},
              {"timeout_s", poi.timeout_s}};
  j["gist"] = {{"orientations", gist.orientations}, {"scales", gist.scales},
               {"grid", gist.grid},                 {"prefilter", gist.prefilter},
               {"image_size", gist.image_size},     {"boundary", gist.boundary},
               {"prefilter_fc", gist.prefilter_fc}};
  j["shots"] = {{"window", shots.window},
                {"beta", shots.beta},
                {"min_shot_len", shots.min_shot_len}};
  j["segmentation"] = {{"graph_k", segmentation.graph_k},
                       {"min_segment_fraction", segmentation.min_segment_fraction},
                       {"coarseness", segmentation.coarseness},
                       {"simplicity_plateau", segmentation.simplicity_plateau}};
  j["composition"] = {{"d_epsilon", thirds.d_epsilon}};
  j["colorbins"] = colorbins.generic_string();
  j["vibrancy"] = {{"d_epsilon_bin", vibrancy.d_epsilon_bin}};
  j["symmetry"] = {{"k", symmetry.k},
                   {"match_ratio", symmetry.match_ratio},
                   {"min_pairs", symmetry.min_pairs},
                   {"position_tolerance", symmetry.position_tolerance},
                   {"max_side", symmetry.max_side},
                   {"horizontal_axis", symmetry.horizontal_axis},
                   {"vertical_axis", symmetry.vertical_axis}};
  j["tilt"] = {{"window", tilt.window}, {"ssim_block", tilt.ssim_block},
               {"c1", tilt.c1},         {"c2", tilt.c2}};
  j["rank"] = {{"lambda1", rank.lambda1},
               {"lambda2", rank.lambda2},
               {"album_size", rank.album_size},
               {"per_shot_cap", rank.per_shot_cap},
               {"head_floor_delta", rank.head_floor_delta}};
  return j;
}

PipelineConfig PipelineConfig::FromJson(const json& given, const std::filesystem::path& base_dir) {
  const PipelineConfig defaults;
  const json known = defaults.ToJson();
  RejectUnknown(given, known, "");
  json j = known;
  j.merge_patch(given);

  PipelineConfig c;
  try {
    c.analysis.max_side = j["analysis"]["max_side"].get<int>();
    const json& g = j["geo"];
    c.geo.d_max_km = g["d_max_km"].get<double>();
    c.geo.d_min_km = g["d_min_km"].get<double>();
    c.geo.speed_reference_ms = g["speed_reference_ms"].get<double>();
    c.geo.node_score_threshold = g["node_score_threshold"].get<double>();
    c.geo.threshold_mode = ParseMode(g["threshold_mode"].get<std::string>());
    c.geo.interval_merge_gap_s = g["interval_merge_gap_s"].get<double>();
    const json& p = j["poi"];
    c.poi.base_url = p["base_url"].get<std::string>();
    c.poi.path = p["path"].get<std::string>();
    c.poi.api_key_env = p["api_key_env"].get<std::string>();
    c.poi.radius_m = p["radius_m"].get<int>();
    c.poi.category = p["category"].get<std::string>();
    c.poi.limit = p["limit"].get<int>();
    c.poi.timeout_s = p["timeout_s"].get<int>();
    const json& gi = j["gist"];
    c.gist.orientations = gi["orientations"].get<int>();
    c.gist.scales = gi["scales"].get<int>();
    c.gist.grid = gi["grid"].get<int>();
    c.gist.prefilter = gi["prefilter"].get<bool>();
    c.gist.image_size = gi["image_size"].get<int>();
    c.gist.boundary = gi["boundary"].get<int>();
    c.gist.prefilter_fc = gi["prefilter_fc"].get<double>();
    c.shots.window = j["shots"]["window"].get<int>();
    c.shots.beta = j["shots"]["beta"].get<double>();
    c.shots.min_shot_len = j["shots"]["min_shot_len"].get<int>();
    const json& s = j["segmentation"];
    c.segmentation.graph_k = s["graph_k"].get<double>();
    c.segmentation.min_segment_fraction = s["min_segment_fraction"].get<double>();
    c.segmentation.coarseness = s["coarseness"].get<double>();
    c.segmentation.simplicity_plateau = s["simplicity_plateau"].get<int>();
    c.thirds.d_epsilon = j["composition"]["d_epsilon"].get<double>();
    c.colorbins = Resolve(j["colorbins"].get<std::string>(), base_dir);
    c.vibrancy.d_epsilon_bin = j["vibrancy"]["d_epsilon_bin"].get<double>();
    const json& y = j["symmetry"];
    c.symmetry.k = y["k"].get<int>();
    c.symmetry.match_ratio = y["match_ratio"].get<double>();
    c.symmetry.min_pairs = y["min_pairs"].get<int>();
    c.symmetry.position_tolerance = y["position_tolerance"].get<double>();
    c.symmetry.max_side = y["max_side"].get<int>();
    c.symmetry.horizontal_axis = y["horizontal_axis"].get<bool>();
    c.symmetry.vertical_axis = y["vertical_axis"].get<bool>();
    const json& t = j["tilt"];
    c.tilt.window = t["window"].get<int>();
    c.tilt.ssim_block = t["ssim_block"].get<int>();
    c.tilt.c1 = t["c1"].get<double>();
    c.tilt.c2 = t["c2"].get<double>();
    const json& r = j["rank"];
    c.rank.lambda1 = r["lambda1"].get<double>();
    c.rank.lambda2 = r["lambda2"].get<double>();
    c.rank.album_size = r["album_size"].get<int>();
    c.rank.per_shot_cap = r["per_shot_cap"].get<int>();
    c.rank.head_floor_delta = r["head_floor_delta"].get<double>();
    const json& rt = j["runtime"];
    c.runtime.parallelism = rt["parallelism"].get<int>();
    c.runtime.cache_dir = Resolve(rt["cache_dir"].get<std::string>(), base_dir);
    c.runtime.output_dir = Resolve(rt["output_dir"].get<std::string>(), base_dir);
  } catch (const json::exception& e) {
    Throw(ErrorCode::kInvalidInput, std::string("config: ") + e.what());
  }
  c.Validate();
  return c;
}

PipelineConfig PipelineConfig::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Throw(ErrorCode::kIo, "cannot open config " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    Throw(ErrorCode::kInvalidInput, "config " + path.string() + ": " + e.what());
  }
  return FromJson(j, path.parent_path());
}

std::string PipelineConfig::Hash() const {
  Hasher h;
  h.Add(ProvenanceJson().dump());
  h.Add(LoadColorBins().ToJson().dump());
  return h.Finish();
}

void PipelineConfig::Override(std::string_view key, std::string_view value) {
  if (key.empty()) Throw(ErrorCode::kInvalidInput, "config override: empty key");
  json patch_value;
  try {
    patch_value = json::parse(value);
  } catch (const json::exception&) {
    patch_value = std::string(value);
  }
  json patch = json::object();
  json* cursor = &patch;
  size_t begin = 0;
  while (true) {
    const size_t dot = key.find('.', begin);
    const std::string part(key.substr(begin, dot == std::string_view::npos ? key.size() - begin
                                                                             : dot - begin));
    if (part.empty()) Throw(ErrorCode::kInvalidInput, "config override: bad key " + std::string(key));
    if (dot == std::string_view::npos) {
      (*cursor)[part] = patch_value;
      break;
    }
    cursor = &(*cursor)[part];
    begin = dot + 1;
  }
  json merged = ToJson();
  RejectUnknown(patch, merged, "");
  merged.merge_patch(patch);
  *this = FromJson(merged);
}

void PipelineConfig::Validate() const {
  if (analysis.max_side < 32) {
    Throw(ErrorCode::kInvalidInput, "config: analysis.max_side must be >= 32");
  }
  geo.Validate();
  if (poi.radius_m <= 0 || poi.limit <= 0 || poi.timeout_s <= 0) {
    Throw(ErrorCode::kInvalidInput, "config: poi radius, limit and timeout must be positive");
  }
  gist.Validate();
  shots.Validate();
  segmentation.Validate();
  if (!(thirds.d_epsilon > 0.0)) {
    Throw(ErrorCode::kInvalidInput, "config: composition.d_epsilon must be > 0");
  }
  if (!(vibrancy.d_epsilon_bin > 0.0)) {
    Throw(ErrorCode::kInvalidInput, "config: vibrancy.d_epsilon_bin must be > 0");
  }
  symmetry.Validate();
  tilt.Validate();
  rank.Validate();
  if (runtime.parallelism < 1) {
    Throw(ErrorCode::kInvalidInput, "config: runtime.parallelism must be >= 1");
  }
}

ColorBinTable PipelineConfig::LoadColorBins() const {
  return colorbins.empty() ? ColorBinTable::Default() : ColorBinTable::Load(colorbins);
}

AestheticsSettings PipelineConfig::Aesthetics() const {
  AestheticsSettings s;
  s.segmentation = segmentation;
  s.thirds = thirds;
  s.vibrancy = vibrancy;
  s.symmetry = symmetry;
  s.table = LoadColorBins();
  return s;
}

}  // namespace egohl
