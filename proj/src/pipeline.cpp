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

#include "egohl/pipeline.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <mutex>

#include "egohl/aesthetics.hpp"
#include "egohl/error.hpp"
#include "egohl/gist.hpp"
#include "egohl/gps_io.hpp"
#include "egohl/hashing.hpp"
#include "egohl/head_tilt.hpp"
#include "egohl/parallel.hpp"
#include "egohl/shots.hpp"

namespace egohl {
namespace {

using nlohmann::json;

// One JSON document per (stage, key) under the cache directory. Writes go
// through a temporary file and a rename.
class StageCache {
 public:
  explicit StageCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  bool enabled() const { return !dir_.empty(); }

  std::optional<json> Get(const std::string& stage, const std::string& key) const {
    if (!enabled()) return std::nullopt;
    std::ifstream in(dir_ / stage / (key + ".json"));
    if (!in) return std::nullopt;
    try {
      return json::parse(in);
    } catch (const json::exception&) {
      spdlog::warn("cache: ignoring corrupt entry {}/{}", stage, key);
      return std::nullopt;
    }
  }

  void Put(const std::string& stage, const std::string& key, const json& value) {
    if (!enabled()) return;
    const auto dir = dir_ / stage;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const auto target = dir / (key + ".json");
    auto tmp = target;
    {
      std::lock_guard<std::mutex> lock(mu_);
      tmp += ".tmp" + std::to_string(++serial_);
    }
    {
      std::ofstream out(tmp, std::ios::trunc);
      if (!out) Throw(ErrorCode::kIo, "cannot write cache entry " + tmp.string());
      out << value.dump();
      if (!out) Throw(ErrorCode::kIo, "cannot write cache entry " + tmp.string());
    }
    std::filesystem::rename(tmp, target, ec);
    if (ec) Throw(ErrorCode::kIo, "cannot publish cache entry " + target.string());
  }

 private:
  std::filesystem::path dir_;
  std::mutex mu_;
  size_t serial_ = 0;
};

std::string FrameLabel(const FrameRef& r) {
  return r.source_id + ":" + std::to_string(r.index);
}

[[noreturn]] void StageFailure(const std::string& stage, const std::string& where,
                               const std::exception& e) {
  Throw(ErrorCode::kPipeline, "stage " + stage + " failed at " + where + ": " + e.what());
}

json DescriptorRecord(const GistDescriptor& d) { return {{"ok", true}, {"gist", d.values}}; }

json AestheticsRecord(const FrameAesthetics& a) {
  return {{"ok", true},
          {"segments", a.segment_count},
          {"comp", a.composition.score},
          {"comp_raw", a.composition.raw_score},
          {"simplicity", a.composition.simplicity},
          {"thirds_point", a.composition.best_point},
          {"per_point", a.composition.per_point},
          {"sym", a.symmetry.score},
          {"sym_vertical", a.symmetry.vertical},
          {"sym_horizontal", a.symmetry.horizontal},
          {"sym_pairs", a.symmetry.pairs},
          {"vib", a.vibrancy}};
}

json FailureRecord(const std::string& message) { return {{"ok", false}, {"error", message}}; }

struct FrameWork {
  FrameRef ref;
  std::string sha;
  std::string desc_key;
  std::string aest_key;
  std::optional<json> desc;
  std::optional<json> aest;
  cv::Mat raster;
  bool decode_attempted = false;
  std::string decode_error;
};

void DecodeInto(std::vector<FrameWork*>& todo, const AnalysisConfig& analysis, int parallelism) {
  ParallelFor(todo.size(), parallelism, [&](size_t i) {
    FrameWork& w = *todo[i];
    w.decode_attempted = true;
    try {
      w.raster = DecodeImage(w.ref.path, analysis);
    } catch (const Error& e) {
      w.decode_error = e.what();
    }
  });
}

std::string TrackNote(const CorpusManifest& manifest) {
  return manifest.gps_track ? manifest.gps_track->filename().string() : std::string();
}

}  // namespace

std::unique_ptr<geo::PoiClient> MakePoiClient(const PoiConfig& cfg) {
  if (cfg.api_key_env.empty()) return nullptr;
  const char* key = std::getenv(cfg.api_key_env.c_str());
  if (key == nullptr || *key == '\0') return nullptr;
  geo::HttpPoiClient::Options o;
  o.base_url = cfg.base_url;
  o.path = cfg.path;
  o.api_key = key;
  o.limit = cfg.limit;
  o.timeout_s = cfg.timeout_s;
  return std::make_unique<geo::HttpPoiClient>(std::move(o));
}

std::vector<geo::GeoNode> GeoNodes(const std::filesystem::path& track,
                                   const geo::GeoConfig& cfg) {
  cfg.Validate();
  const auto points = geo::WithDerivedSpeeds(geo::ReadTrack(track));
  return geo::AggregateNodes(points, cfg);
}

GeoStage GeoScore(const std::filesystem::path& track, const PipelineConfig& cfg,
                  const std::filesystem::path& poi_cache_dir, geo::PoiClient* client,
                  int parallelism) {
  GeoStage out;
  out.nodes = GeoNodes(track, cfg.geo);
  geo::PoiCache cache(poi_cache_dir);
  geo::PoiSearchParams params;
  params.radius_m = cfg.poi.radius_m;
  params.category = cfg.poi.category;
  out.summary = geo::ScoreNodes(out.nodes, client, cache, params, parallelism);
  out.threshold = geo::ResolveThreshold(out.nodes, cfg.geo.node_score_threshold,
                                        cfg.geo.threshold_mode);
  out.intervals =
      geo::ImportanceIntervals(out.nodes, out.threshold, cfg.geo.interval_merge_gap_s);
  return out;
}

PipelineRun RunPipeline(const CorpusManifest& manifest, const PipelineConfig& cfg,
                        RunMode mode, geo::PoiClient* client) {
  cfg.Validate();
  const auto started = std::chrono::steady_clock::now();
  const int par = cfg.runtime.parallelism;
  PipelineRun run;
  StageCache cache(cfg.runtime.cache_dir);
  const json provenance = cfg.ProvenanceJson();
  const std::string config_hash = cfg.Hash();

  // Geo filter.
  std::vector<FrameRef> refs = ListFrames(manifest);
  const size_t listed = refs.size();
  json geo_report;
  if (manifest.gps_track) {
    std::unique_ptr<geo::PoiClient> owned;
    if (client == nullptr) {
      owned = MakePoiClient(cfg.poi);
      client = owned.get();
    }
    const auto poi_dir = cfg.runtime.cache_dir.empty()
                             ? cfg.runtime.output_dir / "poi_cache"
                             : cfg.runtime.cache_dir / "poi";
    GeoStage g;
    try {
      g = GeoScore(*manifest.gps_track, cfg, poi_dir, client, par);
    } catch (const Error& e) {
      StageFailure("geo", TrackNote(manifest), e);
    }
    refs = FilterByIntervals(refs, g.intervals);
    size_t unknown = 0;
    for (const auto& n : g.nodes) unknown += n.score ? 0 : 1;
    geo_report = {{"applied", true},
                  {"track", TrackNote(manifest)},
                  {"nodes", g.nodes.size()},
                  {"nodes_unknown_score", unknown},
                  {"lookup_failures", g.summary.lookup_failures},
                  {"threshold", g.threshold},
                  {"intervals", geo::IntervalsToJson(g.intervals)},
                  {"frames_kept", refs.size()},
                  {"frames_removed", listed - refs.size()}};
    spdlog::info("geo: {} nodes, {} intervals, kept {}/{} frames", g.nodes.size(),
                 g.intervals.size(), refs.size(), listed);
  } else {
    geo_report = {{"applied", false}, {"note", "no GPS track in manifest; geo stage skipped"}};
    spdlog::info("geo: no track, stage skipped");
  }
  if (refs.empty()) Throw(ErrorCode::kEmptyInput, "no frames left after the geo filter");

  // Frame hashing.
  std::vector<FrameWork> work(refs.size());
  ParallelFor(refs.size(), par, [&](size_t i) {
    work[i].ref = refs[i];
    try {
      work[i].sha = Sha256File(refs[i].path);
    } catch (const Error& e) {
      StageFailure("hash", FrameLabel(refs[i]), e);
    }
  });
  Hasher corpus;
  for (const auto& s : manifest.sources) {
    corpus.Add(s.source_id).Add(std::to_string(s.start_timestamp)).Add(std::to_string(s.fps));
  }
  for (const auto& w : work) {
    corpus.Add(w.ref.source_id).Add(std::to_string(w.ref.index)).Add(w.sha);
  }
  const std::string corpus_hash = corpus.Finish();

  // Per-frame cache lookups.
  const std::string analysis_fp = "max_side=" + std::to_string(cfg.analysis.max_side);
  const AestheticsSettings aesthetics = cfg.Aesthetics();
  const std::string aest_fp = Hasher()
                                  .Add(analysis_fp)
                                  .Add(cfg.segmentation.Fingerprint())
                                  .Add(cfg.symmetry.Fingerprint())
                                  .Add(json{{"d_epsilon", cfg.thirds.d_epsilon},
                                            {"d_epsilon_bin", cfg.vibrancy.d_epsilon_bin}}
                                           .dump())
                                  .Add(aesthetics.table.ToJson().dump())
                                  .Finish();
  const std::string desc_fp = Hasher().Add(analysis_fp).Add(cfg.gist.Fingerprint()).Finish();
  for (auto& w : work) {
    w.desc_key = Hasher().Add(w.sha).Add(desc_fp).Finish();
    w.aest_key = Hasher().Add(w.sha).Add(aest_fp).Finish();
    w.desc = cache.Get("descriptors", w.desc_key);
    w.aest = cache.Get("aesthetics", w.aest_key);
  }
  {
    std::vector<FrameWork*> todo;
    for (auto& w : work) {
      if (!w.desc || !w.aest) todo.push_back(&w);
    }
    DecodeInto(todo, cfg.analysis, par);
    run.frames_decoded += todo.size();
  }

  // Descriptors.
  {
    StageStats& st = run.stages["descriptors"];
    const GistExtractor extractor(cfg.gist);
    std::vector<FrameWork*> todo;
    for (auto& w : work) {
      if (w.desc) {
        ++st.hits;
      } else {
        ++st.misses;
        todo.push_back(&w);
      }
    }
    ParallelFor(todo.size(), par, [&](size_t i) {
      FrameWork& w = *todo[i];
      if (w.raster.empty()) {
        w.desc = FailureRecord(w.decode_error);
      } else {
        try {
          w.desc = DescriptorRecord(extractor.Compute(w.raster));
        } catch (const std::exception& e) {
          StageFailure("descriptors", FrameLabel(w.ref), e);
        }
      }
      cache.Put("descriptors", w.desc_key, *w.desc);
    });
  }

  // Segmentation and aesthetics.
  {
    StageStats& st = run.stages["aesthetics"];
    std::vector<FrameWork*> todo;
    for (auto& w : work) {
      if (w.aest) {
        ++st.hits;
      } else {
        ++st.misses;
        todo.push_back(&w);
      }
    }
    ParallelFor(todo.size(), par, [&](size_t i) {
      FrameWork& w = *todo[i];
      if (w.raster.empty()) {
        w.aest = FailureRecord(w.decode_error);
      } else {
        try {
          w.aest = AestheticsRecord(ScoreAesthetics(w.raster, aesthetics));
        } catch (const std::exception& e) {
          StageFailure("aesthetics", FrameLabel(w.ref), e);
        }
      }
      cache.Put("aesthetics", w.aest_key, *w.aest);
    });
  }

  // Frames that decoded; the rest are reported.
  json decode_errors = json::array();
  std::vector<FrameWork*> valid;
  for (auto& w : work) {
    if ((*w.desc)["ok"].get<bool>() && (*w.aest)["ok"].get<bool>()) {
      valid.push_back(&w);
    } else {
      const json& bad = (*w.desc)["ok"].get<bool>() ? *w.aest : *w.desc;
      decode_errors.push_back({{"source_id", w.ref.source_id},
                               {"frame_index", w.ref.index},
                               {"error", bad["error"]}});
    }
  }
  if (valid.empty()) Throw(ErrorCode::kEmptyInput, "corpus contains no decodable frames");
  std::vector<FrameRef> valid_refs;
  for (const auto* w : valid) valid_refs.push_back(w->ref);
  const auto runs = ContiguousRuns(valid_refs);

  std::vector<FrameScores> scores(valid.size());

  // Gamma and shots, per contiguous run.
  {
    StageStats& st = run.stages["shots"];
    int offset = 0;
    for (const auto& [b, e] : runs) {
      Hasher key;
      key.Add(json{{"window", cfg.shots.window},
                   {"beta", cfg.shots.beta},
                   {"min_shot_len", cfg.shots.min_shot_len}}
                  .dump());
      for (size_t i = b; i < e; ++i) key.Add(valid[i]->desc_key);
      const std::string k = key.Finish();
      std::optional<json> rec = cache.Get("shots", k);
      if (rec) {
        ++st.hits;
      } else {
        ++st.misses;
        std::vector<GistDescriptor> desc(e - b);
        for (size_t i = b; i < e; ++i) {
          desc[i - b].values = (*valid[i]->desc)["gist"].get<std::vector<double>>();
        }
        try {
          const auto gammas = ComputeGammas(desc, cfg.shots.window);
          const auto shots = AssignShots(gammas, cfg.shots.beta, cfg.shots.min_shot_len);
          rec = json{{"gamma", shots.gamma}, {"shot_id", shots.shot_id}};
        } catch (const std::exception& ex) {
          StageFailure("shots", FrameLabel(valid[b]->ref), ex);
        }
        cache.Put("shots", k, *rec);
      }
      const auto gammas = (*rec)["gamma"].get<std::vector<double>>();
      const auto ids = (*rec)["shot_id"].get<std::vector<int>>();
      for (size_t i = b; i < e; ++i) {
        scores[i].gamma = gammas[i - b];
        scores[i].shot_id = offset + ids[i - b];
      }
      offset += ids.empty() ? 0 : ids.back() + 1;
    }
  }

  // Head tilt, per contiguous run.
  {
    StageStats& st = run.stages["head_tilt"];
    const std::string tilt_fp = json{{"window", cfg.tilt.window},
                                     {"ssim_block", cfg.tilt.ssim_block},
                                     {"c1", cfg.tilt.c1},
                                     {"c2", cfg.tilt.c2},
                                     {"analysis", analysis_fp}}
                                    .dump();
    for (const auto& [b, e] : runs) {
      Hasher key;
      key.Add(tilt_fp);
      for (size_t i = b; i < e; ++i) key.Add(valid[i]->sha);
      const std::string k = key.Finish();
      std::optional<json> rec = cache.Get("head_tilt", k);
      if (rec) {
        ++st.hits;
      } else {
        ++st.misses;
        std::vector<FrameWork*> todo;
        for (size_t i = b; i < e; ++i) {
          if (!valid[i]->decode_attempted) todo.push_back(valid[i]);
        }
        DecodeInto(todo, cfg.analysis, par);
        run.frames_decoded += todo.size();
        std::vector<cv::Mat> rasters;
        for (size_t i = b; i < e; ++i) {
          if (valid[i]->raster.empty()) {
            Throw(ErrorCode::kPipeline, "stage head_tilt failed at " +
                                            FrameLabel(valid[i]->ref) +
                                            ": frame no longer decodes: " +
                                            valid[i]->decode_error);
          }
          rasters.push_back(valid[i]->raster);
        }
        try {
          rec = json{{"head", HeadScores(rasters, cfg.tilt)}};
        } catch (const std::exception& ex) {
          StageFailure("head_tilt", FrameLabel(valid[b]->ref), ex);
        }
        cache.Put("head_tilt", k, *rec);
      }
      const auto head = (*rec)["head"].get<std::vector<double>>();
      for (size_t i = b; i < e; ++i) scores[i].s_head = head[i - b];
    }
  }
  for (auto& w : work) w.raster.release();

  // Ranking.
  for (size_t i = 0; i < valid.size(); ++i) {
    const json& a = *valid[i]->aest;
    scores[i].s_comp = a["comp"].get<double>();
    scores[i].s_sym = a["sym"].get<double>();
    scores[i].s_vib = a["vib"].get<double>();
    scores[i].s_final = FinalScore(scores[i], cfg.rank);
  }
  run.album = SelectHighlights(scores, cfg.rank);

  json frames = json::array();
  for (size_t i = 0; i < valid.size(); ++i) {
    const json& a = *valid[i]->aest;
    const FrameRef& r = valid[i]->ref;
    frames.push_back({{"source_id", r.source_id},
                      {"frame_index", r.index},
                      {"timestamp", r.timestamp},
                      {"gamma", scores[i].gamma},
                      {"shot_id", scores[i].shot_id},
                      {"segments", a["segments"]},
                      {"thirds_point", a["thirds_point"]},
                      {"composition",
                       {{"raw", a["comp_raw"]},
                        {"simplicity", a["simplicity"]},
                        {"per_point", a["per_point"]}}},
                      {"symmetry",
                       {{"vertical", a["sym_vertical"]},
                        {"horizontal", a["sym_horizontal"]},
                        {"pairs", a["sym_pairs"]}}},
                      {"scores", ScoresToJson(scores[i])}});
  }
  json album_json = json::array();
  for (const auto& e : run.album.entries) {
    album_json.push_back({{"rank", e.rank},
                          {"source_id", valid[e.frame]->ref.source_id},
                          {"frame_index", valid[e.frame]->ref.index},
                          {"shot_id", e.shot_id},
                          {"s_final", e.s_final},
                          {"s_head", e.s_head}});
  }
  int shot_count = 0;
  for (const auto& s : scores) shot_count = std::max(shot_count, s.shot_id + 1);

  run.report = {
      {"config", provenance},
      {"config_hash", config_hash},
      {"corpus_hash", corpus_hash},
      {"metadata",
       {{"version", kVersion},
        {"analysis_max_side", cfg.analysis.max_side},
        {"gist_dimension", cfg.gist.Dimension()},
        {"colorbins", cfg.colorbins.empty() ? std::string("builtin")
                                            : cfg.colorbins.filename().string()},
        {"frames_listed", listed},
        {"frames_scored", valid.size()},
        {"contiguous_runs", runs.size()},
        {"shot_count", shot_count}}},
      {"geo", geo_report},
      {"decode_errors", decode_errors},
      {"frames", frames},
      {"album", album_json},
      {"album_truncated", run.album.truncated}};

  std::error_code ec;
  std::filesystem::create_directories(cfg.runtime.output_dir, ec);
  run.report_path = cfg.runtime.output_dir / "report.json";
  {
    std::ofstream out(run.report_path, std::ios::trunc);
    if (!out) Throw(ErrorCode::kIo, "cannot write " + run.report_path.string());
    out << run.report.dump(2) << "\n";
    if (!out) Throw(ErrorCode::kIo, "write failed for " + run.report_path.string());
  }

  if (mode == RunMode::kAlbum) {
    for (const auto& e : run.album.entries) {
      run.exported.push_back({e, valid[e.frame]->ref, scores[e.frame]});
    }
    try {
      run.album_path = ExportAlbum(run.exported, {provenance, config_hash, corpus_hash},
                                   cfg.runtime.output_dir / "album");
    } catch (const Error& e) {
      StageFailure("export", cfg.runtime.output_dir.string(), e);
    }
  }

  for (const auto& [name, st] : run.stages) {
    spdlog::info("stage {}: {} cached, {} computed", name, st.hits, st.misses);
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  spdlog::info("pipeline: {} frames scored, {} decoded, {} album entries in {:.2f}s",
               valid.size(), run.frames_decoded, run.album.entries.size(), secs);
  return run;
}

json InspectFrame(const json& report, const std::string& source_id, int64_t frame_index) {
  if (!report.contains("frames")) Throw(ErrorCode::kInvalidInput, "inspect: not a score report");
  for (const auto& f : report["frames"]) {
    if (f["source_id"] == source_id && f["frame_index"].get<int64_t>() == frame_index) return f;
  }
  Throw(ErrorCode::kLookup,
        "inspect: frame " + source_id + ":" + std::to_string(frame_index) + " not in report");
}

json RunBaseline(const CorpusManifest& manifest, const PipelineConfig& cfg, BaselineMode mode,
                 int x, geo::PoiClient* client) {
  std::vector<FrameRef> refs = ListFrames(manifest);
  std::stable_sort(refs.begin(), refs.end(), [](const FrameRef& a, const FrameRef& b) {
    return a.timestamp < b.timestamp;
  });
  std::vector<size_t> picks;
  bool filtered = false;
  if (mode == BaselineMode::kGeo) {
    if (!manifest.gps_track) {
      Throw(ErrorCode::kInvalidInput,
            "baseline geo needs a GPS track; use the chrono baseline for this corpus");
    }
    const auto track = geo::WithDerivedSpeeds(geo::ReadTrack(*manifest.gps_track));
    picks = BaselineGeoUniform(track, refs, x);
  } else {
    if (manifest.gps_track) {
      std::unique_ptr<geo::PoiClient> owned;
      if (client == nullptr) {
        owned = MakePoiClient(cfg.poi);
        client = owned.get();
      }
      const auto poi_dir = cfg.runtime.cache_dir.empty() ? cfg.runtime.output_dir / "poi_cache"
                                                         : cfg.runtime.cache_dir / "poi";
      const GeoStage g =
          GeoScore(*manifest.gps_track, cfg, poi_dir, client, cfg.runtime.parallelism);
      refs = FilterByIntervals(refs, g.intervals);
      filtered = true;
    }
    picks = BaselineChronoUniform(refs, x);
  }
  json frames = json::array();
  for (size_t p : picks) {
    frames.push_back({{"position", p},
                      {"source_id", refs[p].source_id},
                      {"frame_index", refs[p].index},
                      {"timestamp", refs[p].timestamp}});
  }
  return {{"mode", mode == BaselineMode::kGeo ? "geo" : "chrono"},
          {"x", x},
          {"geo_filtered", filtered},
          {"frames", frames}};
}

}  // namespace egohl
