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

#include "egohl/ingest.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "egohl/error.hpp"
#include "egohl/parallel.hpp"

namespace egohl {
namespace {

bool InIntervals(double t, std::span<const geo::TimeInterval> intervals) {
  // First interval whose end >= t.
  auto it = std::lower_bound(intervals.begin(), intervals.end(), t,
                             [](const geo::TimeInterval& iv, double v) { return iv.end < v; });
  return it != intervals.end() && it->start <= t;
}

std::optional<int64_t> ParseFrameIndex(const std::string& filename) {
  // frame_%08d.<ext>
  constexpr std::string_view kPrefix = "frame_";
  if (filename.rfind(kPrefix, 0) != 0) return std::nullopt;
  const auto dot = filename.find('.', kPrefix.size());
  if (dot == std::string::npos) return std::nullopt;
  std::string ext = filename.substr(dot + 1);
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (ext != "png" && ext != "jpg" && ext != "jpeg") return std::nullopt;
  int64_t idx = 0;
  const char* b = filename.data() + kPrefix.size();
  const char* e = filename.data() + dot;
  auto [ptr, ec] = std::from_chars(b, e, idx);
  if (ec != std::errc() || ptr != e || idx < 0) return std::nullopt;
  return idx;
}

}  // namespace

CorpusManifest CorpusManifest::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Throw(ErrorCode::kIo, "cannot open manifest " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    Throw(ErrorCode::kInvalidInput, "manifest " + path.string() + ": " + e.what());
  }
  return FromJson(j, path.parent_path());
}

CorpusManifest CorpusManifest::FromJson(const nlohmann::json& j,
                                        const std::filesystem::path& base_dir) {
  CorpusManifest m;
  try {
    for (const auto& s : j.at("sources")) {
      SourceSpec spec;
      spec.source_id = s.at("source_id").get<std::string>();
      std::filesystem::path p = s.at("path").get<std::string>();
      spec.path = p.is_absolute() ? p : base_dir / p;
      spec.start_timestamp = s.value("start_timestamp", 0.0);
      spec.fps = s.at("fps").get<double>();
      m.sources.push_back(std::move(spec));
    }
    if (j.contains("gps_track") && !j["gps_track"].is_null()) {
      std::filesystem::path p = j["gps_track"].get<std::string>();
      m.gps_track = p.is_absolute() ? p : base_dir / p;
    }
  } catch (const nlohmann::json::exception& e) {
    Throw(ErrorCode::kInvalidInput, std::string("manifest: ") + e.what());
  }
  m.Validate();
  return m;
}

nlohmann::json CorpusManifest::ToJson() const {
  nlohmann::json out;
  out["sources"] = nlohmann::json::array();
  for (const auto& s : sources) {
    out["sources"].push_back({{"source_id", s.source_id},
                              {"path", s.path.generic_string()},
                              {"start_timestamp", s.start_timestamp},
                              {"fps", s.fps}});
  }
  out["gps_track"] = gps_track ? nlohmann::json(gps_track->generic_string())
                               : nlohmann::json(nullptr);
  return out;
}

void CorpusManifest::Validate() const {
  std::set<std::string> ids;
  for (const auto& s : sources) {
    if (s.source_id.empty()) Throw(ErrorCode::kInvalidInput, "manifest: empty source_id");
    if (!ids.insert(s.source_id).second) {
      Throw(ErrorCode::kInvalidInput, "manifest: duplicate source_id " + s.source_id);
    }
    if (!(s.fps > 0.0)) {
      Throw(ErrorCode::kInvalidInput, "manifest: fps must be > 0 for " + s.source_id);
    }
  }
}

std::vector<FrameRef> ListFrames(const CorpusManifest& manifest) {
  std::vector<FrameRef> refs;
  for (const auto& src : manifest.sources) {
    std::error_code ec;
    if (!std::filesystem::is_directory(src.path, ec)) {
      Throw(ErrorCode::kIo, "frame directory missing: " + src.path.string());
    }
    std::vector<FrameRef> local;
    for (const auto& entry : std::filesystem::directory_iterator(src.path)) {
      if (!entry.is_regular_file()) continue;
      const auto idx = ParseFrameIndex(entry.path().filename().string());
      if (!idx) continue;
      FrameRef ref;
      ref.source_id = src.source_id;
      ref.index = *idx;
      ref.timestamp = src.start_timestamp + static_cast<double>(*idx) / src.fps;
      ref.path = entry.path();
      local.push_back(std::move(ref));
    }
    std::sort(local.begin(), local.end(),
              [](const FrameRef& a, const FrameRef& b) { return a.index < b.index; });
    for (size_t i = 1; i < local.size(); ++i) {
      if (local[i].index == local[i - 1].index) {
        Throw(ErrorCode::kInvalidInput, "duplicate frame index " +
                                            std::to_string(local[i].index) + " in " +
                                            src.source_id);
      }
    }
    refs.insert(refs.end(), std::make_move_iterator(local.begin()),
                std::make_move_iterator(local.end()));
  }
  return refs;
}

cv::Mat ToAnalysisResolution(const cv::Mat& rgb, const AnalysisConfig& cfg) {
  const int longest = std::max(rgb.cols, rgb.rows);
  if (cfg.max_side <= 0 || longest <= cfg.max_side) return rgb;
  const double scale = static_cast<double>(cfg.max_side) / longest;
  const int w = std::max(1, static_cast<int>(std::lround(rgb.cols * scale)));
  const int h = std::max(1, static_cast<int>(std::lround(rgb.rows * scale)));
  cv::Mat out;
  cv::resize(rgb, out, cv::Size(w, h), 0, 0, cv::INTER_AREA);
  return out;
}

cv::Mat DecodeImage(const std::filesystem::path& path, const AnalysisConfig& cfg) {
  cv::Mat bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
  if (bgr.empty()) Throw(ErrorCode::kDecode, "cannot decode " + path.string());
  if (bgr.cols < kMinFrameSide || bgr.rows < kMinFrameSide) {
    Throw(ErrorCode::kDecode, "frame smaller than 32x32: " + path.string());
  }
  cv::Mat rgb;
  cv::cvtColor(bgr, rgb, cv::COLOR_BGR2RGB);
  return ToAnalysisResolution(rgb, cfg);
}

LoadedFrames DecodeFrames(std::span<const FrameRef> refs, const AnalysisConfig& cfg,
                          int parallelism) {
  std::vector<cv::Mat> rasters(refs.size());
  std::vector<std::string> errors(refs.size());
  ParallelFor(refs.size(), parallelism, [&](size_t i) {
    try {
      rasters[i] = DecodeImage(refs[i].path, cfg);
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  });
  LoadedFrames out;
  for (size_t i = 0; i < refs.size(); ++i) {
    if (rasters[i].empty()) {
      spdlog::warn("ingest: skipping frame {}:{}: {}", refs[i].source_id, refs[i].index,
                   errors[i]);
      out.failures.push_back({refs[i], errors[i]});
      continue;
    }
    FrameRecord rec;
    rec.index = refs[i].index;
    rec.source_id = refs[i].source_id;
    rec.timestamp = refs[i].timestamp;
    rec.raster = std::move(rasters[i]);
    rec.path = refs[i].path;
    out.frames.push_back(std::move(rec));
  }
  return out;
}

LoadedFrames LoadCorpus(const CorpusManifest& manifest, const AnalysisConfig& cfg,
                        int parallelism) {
  const auto refs = ListFrames(manifest);
  auto loaded = DecodeFrames(refs, cfg, parallelism);
  if (loaded.frames.empty()) Throw(ErrorCode::kEmptyInput, "corpus contains no decodable frames");
  return loaded;
}

std::vector<FrameRef> FilterByIntervals(std::span<const FrameRef> refs,
                                        std::span<const geo::TimeInterval> intervals) {
  std::vector<FrameRef> out;
  for (const auto& r : refs) {
    if (InIntervals(r.timestamp, intervals)) out.push_back(r);
  }
  return out;
}

std::vector<FrameRecord> FilterByIntervals(std::vector<FrameRecord> frames,
                                           std::span<const geo::TimeInterval> intervals) {
  std::vector<FrameRecord> out;
  for (auto& f : frames) {
    if (InIntervals(f.timestamp, intervals)) {
      f.gps_linked = true;
      out.push_back(std::move(f));
    }
  }
  return out;
}

std::vector<std::pair<size_t, size_t>> ContiguousRuns(std::span<const FrameRef> refs) {
  std::vector<std::pair<size_t, size_t>> runs;
  size_t begin = 0;
  for (size_t i = 1; i <= refs.size(); ++i) {
    const bool split = i == refs.size() || refs[i].source_id != refs[i - 1].source_id ||
                       refs[i].index != refs[i - 1].index + 1;
    if (split) {
      if (i > begin) runs.emplace_back(begin, i);
      begin = i;
    }
  }
  return runs;
}

}  // namespace egohl
