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

#ifndef EGOHL_RANKING_HPP_
#define EGOHL_RANKING_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "egohl/geo.hpp"
#include "egohl/ingest.hpp"
#include "json.hpp"

namespace egohl {

struct FrameScores {
  double gamma = 1.0;
  double s_comp = 0.0;
  double s_sym = 0.0;
  double s_vib = 0.0;
  double s_head = 1.0;
  double s_final = 0.0;
  int shot_id = 0;
};

struct RankConfig {
  double lambda1 = 0.8;
  double lambda2 = 0.2;
  int album_size = 100;
  int per_shot_cap = 1;
  // A within-shot substitute must keep s_final >= (1 - delta) * candidate.
  double head_floor_delta = 0.1;

  void Validate() const;
};

// s_vib * (lambda1 * s_comp + lambda2 * s_sym)
double FinalScore(const FrameScores& s, const RankConfig& cfg);

struct AlbumEntry {
  size_t frame = 0;  // position in the scored sequence
  int rank = 0;      // 1-based
  double s_final = 0.0;
  double s_head = 0.0;
  int shot_id = 0;
};

struct HighlightAlbum {
  std::vector<AlbumEntry> entries;
  bool truncated = false;  // fewer than album_size entries were available
};

// Walks frames by descending s_final (ties: lower position), skipping frames
// already selected. Each candidate is replaced by the frame of its shot with
// the best s_head among frames scoring at least (1 - delta) * candidate
// s_final; shots already holding per_shot_cap entries are skipped.
HighlightAlbum SelectHighlights(std::span<const FrameScores> scores, const RankConfig& cfg);

// Positions into `frames` of the frames closest in time to x track points
// taken uniformly by index (point floor((2k + 1) n / 2x)). Duplicates are
// dropped, keeping first occurrence. Throws when the track is empty.
std::vector<size_t> BaselineGeoUniform(std::span<const geo::GpsPoint> track,
                                       std::span<const FrameRef> frames, int x);

// Positions of the frames nearest to x equally spaced instants over the
// concatenated duration of the contiguous runs in `frames` (instant k sits
// at (k + 1/2) / x of the total). Throws on an empty input.
std::vector<size_t> BaselineChronoUniform(std::span<const FrameRef> frames, int x);

struct ExportedEntry {
  AlbumEntry entry;
  FrameRef ref;
  FrameScores scores;
};

struct AlbumProvenance {
  nlohmann::json config;
  std::string config_hash;
  std::string corpus_hash;
};

// Copies each entry's source image as rank_%03d_<source>_<index>.png and
// writes album.json. Returns the album.json path.
std::filesystem::path ExportAlbum(std::span<const ExportedEntry> entries,
                                  const AlbumProvenance& provenance,
                                  const std::filesystem::path& out_dir);

nlohmann::json ScoresToJson(const FrameScores& s);

}  // namespace egohl

#endif  // EGOHL_RANKING_HPP_
