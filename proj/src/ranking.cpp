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

#include "egohl/ranking.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <set>

#include <opencv2/imgcodecs.hpp>

#include "egohl/error.hpp"
#include "egohl/hashing.hpp"

namespace egohl {
namespace {

// Position of the frame with minimal |t - timestamp|; ties go to the earlier
// frame. `frames` must be sorted by timestamp.
size_t NearestByTime(std::span<const FrameRef> frames, double t) {
  auto it = std::lower_bound(frames.begin(), frames.end(), t,
                             [](const FrameRef& f, double v) { return f.timestamp < v; });
  if (it == frames.begin()) return 0;
  if (it == frames.end()) return frames.size() - 1;
  const size_t hi = static_cast<size_t>(it - frames.begin());
  const size_t lo = hi - 1;
  return (t - frames[lo].timestamp) <= (frames[hi].timestamp - t) ? lo : hi;
}

void Dedupe(std::vector<size_t>& picks) {
  std::set<size_t> seen;
  std::vector<size_t> out;
  for (size_t p : picks) {
    if (seen.insert(p).second) out.push_back(p);
  }
  picks = std::move(out);
}

bool SortedByTime(std::span<const FrameRef> frames) {
  for (size_t i = 1; i < frames.size(); ++i) {
    if (frames[i].timestamp < frames[i - 1].timestamp) return false;
  }
  return true;
}

}  // namespace

void RankConfig::Validate() const {
  if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0)) {
    Throw(ErrorCode::kInvalidInput, "ranking: lambdas must be >= 0");
  }
  if (album_size < 1) Throw(ErrorCode::kInvalidInput, "ranking: album_size must be >= 1");
  if (per_shot_cap < 1) Throw(ErrorCode::kInvalidInput, "ranking: per_shot_cap must be >= 1");
  if (!(head_floor_delta >= 0.0 && head_floor_delta <= 1.0)) {
    Throw(ErrorCode::kInvalidInput, "ranking: head_floor_delta must lie in [0, 1]");
  }
}

double FinalScore(const FrameScores& s, const RankConfig& cfg) {
  return s.s_vib * (cfg.lambda1 * s.s_comp + cfg.lambda2 * s.s_sym);
}

HighlightAlbum SelectHighlights(std::span<const FrameScores> scores, const RankConfig& cfg) {
  cfg.Validate();
  std::vector<size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&scores](size_t a, size_t b) {
    return scores[a].s_final > scores[b].s_final;
  });

  std::map<int, std::vector<size_t>> members;
  for (size_t i = 0; i < scores.size(); ++i) members[scores[i].shot_id].push_back(i);

  HighlightAlbum album;
  std::map<int, int> used_per_shot;
  std::vector<char> taken(scores.size(), 0);
  const size_t k = static_cast<size_t>(cfg.album_size);
  for (size_t cand : order) {
    if (album.entries.size() >= k) break;
    if (taken[cand]) continue;
    const int shot = scores[cand].shot_id;
    if (used_per_shot[shot] >= cfg.per_shot_cap) continue;
    const double floor = (1.0 - cfg.head_floor_delta) * scores[cand].s_final;
    size_t pick = cand;
    bool found = false;
    for (size_t f : members[shot]) {
      if (taken[f] || scores[f].s_final < floor) continue;
      if (!found) {
        pick = f;
        found = true;
        continue;
      }
      const FrameScores& a = scores[f];
      const FrameScores& b = scores[pick];
      // Best head score, then best final score, then earliest frame.
      if (a.s_head > b.s_head || (a.s_head == b.s_head && a.s_final > b.s_final)) pick = f;
    }
    if (!found) continue;
    taken[pick] = 1;
    ++used_per_shot[shot];
    AlbumEntry e;
    e.frame = pick;
    e.rank = static_cast<int>(album.entries.size()) + 1;
    e.s_final = scores[pick].s_final;
    e.s_head = scores[pick].s_head;
    e.shot_id = shot;
    album.entries.push_back(e);
  }
  if (album.entries.size() < k) {
    album.truncated = true;
    spdlog::warn("ranking: album holds {} of {} requested entries", album.entries.size(), k);
  }
  return album;
}

std::vector<size_t> BaselineGeoUniform(std::span<const geo::GpsPoint> track,
                                       std::span<const FrameRef> frames, int x) {
  if (track.empty()) {
    Throw(ErrorCode::kInvalidInput,
          "baseline geo: no GPS track; use the chronological baseline instead");
  }
  if (frames.empty()) Throw(ErrorCode::kEmptyInput, "baseline geo: no frames");
  if (x < 1) Throw(ErrorCode::kInvalidInput, "baseline geo: x must be >= 1");
  if (!SortedByTime(frames)) Throw(ErrorCode::kInvalidInput, "baseline geo: frames not time-sorted");
  const size_t n = track.size();
  const size_t samples = std::min(n, static_cast<size_t>(x));
  std::vector<size_t> picks;
  for (size_t s = 0; s < samples; ++s) {
    const size_t idx = (2 * s + 1) * n / (2 * samples);
    picks.push_back(NearestByTime(frames, track[idx].timestamp));
  }
  Dedupe(picks);
  return picks;
}

std::vector<size_t> BaselineChronoUniform(std::span<const FrameRef> frames, int x) {
  if (frames.empty()) Throw(ErrorCode::kEmptyInput, "baseline chrono: filtered corpus is empty");
  if (x < 1) Throw(ErrorCode::kInvalidInput, "baseline chrono: x must be >= 1");
  if (!SortedByTime(frames)) {
    Throw(ErrorCode::kInvalidInput, "baseline chrono: frames not time-sorted");
  }
  const auto runs = ContiguousRuns(frames);
  std::vector<double> lengths;
  double total = 0.0;
  for (const auto& [b, e] : runs) {
    lengths.push_back(frames[e - 1].timestamp - frames[b].timestamp);
    total += lengths.back();
  }
  std::vector<size_t> picks;
  if (!(total > 0.0)) {
    // Only single-frame runs: fall back to uniform positions.
    for (int k = 0; k < x; ++k) {
      picks.push_back(static_cast<size_t>((2 * static_cast<size_t>(k) + 1) * frames.size() /
                                          (2 * static_cast<size_t>(x))));
    }
    Dedupe(picks);
    return picks;
  }
  for (int k = 0; k < x; ++k) {
    double u = (k + 0.5) * total / x;
    size_t r = 0;
    while (r + 1 < runs.size() && u > lengths[r]) {
      u -= lengths[r];
      ++r;
    }
    const auto [b, e] = runs[r];
    const auto run = frames.subspan(b, e - b);
    picks.push_back(b + NearestByTime(run, run.front().timestamp + std::min(u, lengths[r])));
  }
  Dedupe(picks);
  return picks;
}

nlohmann::json ScoresToJson(const FrameScores& s) {
  return {{"gamma", s.gamma}, {"comp", s.s_comp}, {"sym", s.s_sym},
          {"vib", s.s_vib},   {"head", s.s_head}, {"final", s.s_final}};
}

std::filesystem::path ExportAlbum(std::span<const ExportedEntry> entries,
                                  const AlbumProvenance& provenance,
                                  const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    Throw(ErrorCode::kIo, "cannot create album directory " + out_dir.string());
  }
  // Drop images from a previous export.
  for (const auto& old : std::filesystem::directory_iterator(out_dir)) {
    const std::string name = old.path().filename().string();
    if (old.is_regular_file() && name.rfind("rank_", 0) == 0 && old.path().extension() == ".png") {
      std::filesystem::remove(old.path(), ec);
    }
  }
  nlohmann::json list = nlohmann::json::array();
  for (const ExportedEntry& e : entries) {
    char name[64];
    std::snprintf(name, sizeof(name), "rank_%03d_", e.entry.rank);
    const std::string file =
        std::string(name) + e.ref.source_id + "_" + std::to_string(e.ref.index) + ".png";
    const auto target = out_dir / file;
    std::string ext = e.ref.path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (ext == ".png") {
      std::filesystem::copy_file(e.ref.path, target,
                                 std::filesystem::copy_options::overwrite_existing, ec);
      if (ec) Throw(ErrorCode::kIo, "cannot copy " + e.ref.path.string() + ": " + ec.message());
    } else {
      const cv::Mat img = cv::imread(e.ref.path.string(), cv::IMREAD_COLOR);
      if (img.empty() || !cv::imwrite(target.string(), img)) {
        Throw(ErrorCode::kIo, "cannot re-encode " + e.ref.path.string());
      }
    }
    list.push_back({{"rank", e.entry.rank},
                    {"source_id", e.ref.source_id},
                    {"frame_index", e.ref.index},
                    {"timestamp", e.ref.timestamp},
                    {"scores", ScoresToJson(e.scores)},
                    {"shot_id", e.entry.shot_id},
                    {"file", file},
                    {"sha256", Sha256File(target)}});
  }
  nlohmann::json doc = {{"config", provenance.config},
                        {"config_hash", provenance.config_hash},
                        {"corpus_hash", provenance.corpus_hash},
                        {"entries", std::move(list)}};
  const auto path = out_dir / "album.json";
  std::ofstream out(path, std::ios::trunc);
  if (!out) Throw(ErrorCode::kIo, "cannot write " + path.string());
  out << doc.dump(2) << "\n";
  if (!out) Throw(ErrorCode::kIo, "write failed for " + path.string());
  return path;
}

}  // namespace egohl
