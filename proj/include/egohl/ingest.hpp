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

#ifndef EGOHL_INGEST_HPP_
#define EGOHL_INGEST_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <opencv2/core.hpp>

#include "egohl/geo.hpp"
#include "json.hpp"

namespace egohl {

inline constexpr int kMinFrameSide = 32;

struct SourceSpec {
  std::string source_id;
  std::filesystem::path path;  // directory of frame_%08d.png files
  double start_timestamp = 0.0;
  double fps = 30.0;
};

struct CorpusManifest {
  std::vector<SourceSpec> sources;
  std::optional<std::filesystem::path> gps_track;

  // Relative paths are resolved against the manifest's directory.
  static CorpusManifest Load(const std::filesystem::path& path);
  static CorpusManifest FromJson(const nlohmann::json& j,
                                 const std::filesystem::path& base_dir);
  nlohmann::json ToJson() const;
  void Validate() const;
};

// A frame on disk, before decoding.
struct FrameRef {
  std::string source_id;
  int64_t index = 0;
  double timestamp = 0.0;
  std::filesystem::path path;
};

struct FrameRecord {
  int64_t index = 0;
  std::string source_id;
  double timestamp = 0.0;
  cv::Mat raster;  // CV_8UC3, RGB order, analysis resolution
  bool gps_linked = false;
  std::filesystem::path path;
};

struct DecodeFailure {
  FrameRef ref;
  std::string message;
};

struct AnalysisConfig {
  int max_side = 480;  // longest side after downscaling; never upscales
};

// Every frame file of every source, in (source, index) order with
// timestamp = start + index / fps.
std::vector<FrameRef> ListFrames(const CorpusManifest& manifest);

// Decodes one image as RGB at analysis resolution. Throws Error(kDecode).
cv::Mat DecodeImage(const std::filesystem::path& path, const AnalysisConfig& cfg);
cv::Mat ToAnalysisResolution(const cv::Mat& rgb, const AnalysisConfig& cfg);

struct LoadedFrames {
  std::vector<FrameRecord> frames;
  std::vector<DecodeFailure> failures;
};

// Decodes refs in parallel; output order equals input order. Undecodable
// frames are skipped and reported.
LoadedFrames DecodeFrames(std::span<const FrameRef> refs,
                          const AnalysisConfig& cfg, int parallelism);

// ListFrames + DecodeFrames. Throws Error(kEmptyInput) when nothing decodes.
LoadedFrames LoadCorpus(const CorpusManifest& manifest, const AnalysisConfig& cfg,
                        int parallelism);

// Keeps refs whose timestamp lies in a closed interval. Intervals must be
// sorted and disjoint.
std::vector<FrameRef> FilterByIntervals(std::span<const FrameRef> refs,
                                        std::span<const geo::TimeInterval> intervals);
std::vector<FrameRecord> FilterByIntervals(std::vector<FrameRecord> frames,
                                           std::span<const geo::TimeInterval> intervals);

// Maximal runs of consecutive frames (same source, index + 1). Returned as
// [begin, end) offsets.
std::vector<std::pair<size_t, size_t>> ContiguousRuns(std::span<const FrameRef> refs);

}  // namespace egohl

#endif  // EGOHL_INGEST_HPP_
