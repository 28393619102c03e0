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

// Synthetic inputs shared by the unit and acceptance tests. Everything is
// driven by explicit seeds.

#ifndef EGOHL_TESTS_FIXTURES_HPP_
#define EGOHL_TESTS_FIXTURES_HPP_

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <opencv2/core.hpp>

#include "egohl/geo.hpp"
#include "egohl/gist.hpp"

namespace egohl::fixtures {

class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}
  double Uniform(double lo, double hi);
  int Int(int lo, int hi);  // inclusive
  bool Coin(double p = 0.5);
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
};

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

cv::Mat Solid(int w, int h, cv::Vec3b rgb);
cv::Mat Noise(int w, int h, Rng& rng);
// Filled disc of `fg` centred at normalized (cx, cy) with radius r (fraction
// of the shorter side) on `bg`.
cv::Mat Disc(int w, int h, double cx, double cy, double r, cv::Vec3b fg, cv::Vec3b bg);
// Dense random shapes covering the whole frame.
cv::Mat Clutter(int w, int h, Rng& rng);
// Clutter whose left half is mirrored onto the right half.
cv::Mat MirrorPattern(int w, int h, Rng& rng);
// Three visually distinct scene families; frames t of a scene differ only
// by a one-pixel drift and low-amplitude noise.
cv::Mat SceneFrame(int scene, int t, int w, int h);
cv::Mat Rotate(const cv::Mat& rgb, double degrees);
cv::Mat Translate(const cv::Mat& rgb, double dx, double dy);

void WritePng(const std::filesystem::path& path, const cv::Mat& rgb);

GistDescriptor RandomDescriptor(Rng& rng, size_t dim);

// Points every `dt` seconds jittering within `jitter_m` of (lat, lon).
std::vector<geo::GpsPoint> Stationary(double lat, double lon, double t0, int count, double dt,
                                      double jitter_m, Rng& rng);
// Straight drive due east at `speed_ms` from (lat, lon) starting at t0.
std::vector<geo::GpsPoint> DriveEast(double lat, double lon, double t0, double distance_km,
                                     double speed_ms, double dt);
// Longitude offset (degrees) of an eastward move of `km` at latitude `lat`.
double EastDegrees(double lat, double km);

std::vector<geo::PoiRecord> MakePois(int count, Rng& rng);

void WriteTrackCsv(const std::filesystem::path& path, const std::vector<geo::GpsPoint>& track);

// 200-frame, two-source corpus (cam_a: 120 frames, cam_b: 80 frames) at
// 320x180 with a GPS track. Returns the manifest path. POI fixtures for the
// track's nodes are written by SeedPoiCache.
struct E2ECorpus {
  std::filesystem::path manifest;
  std::filesystem::path track;
  int frames = 0;
};
E2ECorpus WriteE2ECorpus(const std::filesystem::path& dir);
void SeedPoiCache(const std::filesystem::path& poi_dir, const std::filesystem::path& track,
                  const geo::GeoConfig& cfg, int radius_m);

// Ten cases: the original holds a subject at the frame centre; each crop
// moves it onto a thirds point.
void WriteThirdsCropDataset(const std::filesystem::path& dir, int cases, uint64_t seed);

}  // namespace egohl::fixtures

#endif  // EGOHL_TESTS_FIXTURES_HPP_
