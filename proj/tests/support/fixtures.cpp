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

#include "fixtures.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "egohl/geo.hpp"
#include "egohl/gps_io.hpp"
#include "egohl/poi.hpp"
#include "json.hpp"

namespace egohl::fixtures {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEarthKm = 6371.0088;

uint8_t Clamp8(double v) {
  return static_cast<uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

// Cheap deterministic per-pixel noise in [-1, 1].
double HashNoise(uint64_t a, uint64_t b, uint64_t c) {
  uint64_t z = a * 0x9E3779B97F4A7C15ULL ^ (b + 0xBF58476D1CE4E5B9ULL) * 0x94D049BB133111EBULL ^
               (c + 0x2545F4914F6CDD1DULL);
  z ^= z >> 31;
  z *= 0xD6E8FEB86659FD93ULL;
  z ^= z >> 32;
  return static_cast<double>(z % 20001) / 10000.0 - 1.0;
}

cv::Vec3b Pattern(int scene, double x, double y, int w, int h) {
  switch (scene % 6) {
    case 0: {
      const double v = 128 + 100 * std::sin(2 * kPi * y / (h / 5.0));
      return {Clamp8(v), Clamp8(0.5 * v + 50), 40};
    }
    case 1: {
      const double v = 128 + 110 * std::sin(2 * kPi * x / (w / 13.0));
      return {40, Clamp8(v), Clamp8(0.4 * v + 60)};
    }
    case 2: {
      const double s = std::sin(2 * kPi * (x + y) / 36.0) * std::sin(2 * kPi * (x - y) / 36.0);
      return s > 0 ? cv::Vec3b{30, 60, 220} : cv::Vec3b{240, 210, 30};
    }
    case 3: {
      const double r = std::hypot(x - w / 2.0, y - h / 2.0);
      const double v = 128 + 120 * std::cos(2 * kPi * r / 22.0);
      return {Clamp8(v), 40, Clamp8(255 - v)};
    }
    case 4: {
      const bool in = std::hypot(x - 0.66 * w, y - 0.36 * h) < 0.2 * h;
      if (in) return {250, 120, 20};
      return {Clamp8(30 + 60 * y / h), Clamp8(90 + 80 * x / w), 160};
    }
    default: {
      // Mirror-symmetric arch with blocks on both sides.
      const double mx = std::abs(x - w / 2.0);
      const bool arch = std::hypot(mx, y - h) < 0.8 * h && std::hypot(mx, y - h) > 0.6 * h;
      const bool block = mx > 0.25 * w && mx < 0.38 * w && y > 0.3 * h && y < 0.7 * h;
      const bool stripe = static_cast<int>(y / 9) % 2 == 0 && mx < 0.1 * w;
      if (arch) return {200, 40, 160};
      if (block) return {30, 200, 200};
      if (stripe) return {240, 240, 60};
      return {Clamp8(40 + mx / 4), 50, 90};
    }
  }
}

}  // namespace

double Rng::Uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(eng_);
}

int Rng::Int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }

bool Rng::Coin(double p) { return Uniform(0.0, 1.0) < p; }

TempDir::TempDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          ("egohl_" + tag + "_" + std::to_string(::getpid()) + "_" +
           std::to_string(counter.fetch_add(1)));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

cv::Mat Solid(int w, int h, cv::Vec3b rgb) { return cv::Mat(h, w, CV_8UC3, cv::Scalar(rgb[0], rgb[1], rgb[2])); }

cv::Mat Noise(int w, int h, Rng& rng) {
  cv::Mat m(h, w, CV_8UC3);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      m.at<cv::Vec3b>(y, x) = {static_cast<uint8_t>(rng.Int(0, 255)),
                               static_cast<uint8_t>(rng.Int(0, 255)),
                               static_cast<uint8_t>(rng.Int(0, 255))};
    }
  }
  return m;
}

cv::Mat Disc(int w, int h, double cx, double cy, double r, cv::Vec3b fg, cv::Vec3b bg) {
  cv::Mat m = Solid(w, h, bg);
  const double rad = r * std::min(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (std::hypot(x + 0.5 - cx * w, y + 0.5 - cy * h) <= rad) m.at<cv::Vec3b>(y, x) = fg;
    }
  }
  return m;
}

cv::Mat Clutter(int w, int h, Rng& rng) {
  cv::Mat m(h, w, CV_8UC3, cv::Scalar(90, 90, 90));
  const int span = std::max(4, std::min(w, h) / 17);
  for (int i = 0; i < 400; ++i) {
    const cv::Scalar color(rng.Int(0, 255), rng.Int(0, 255), rng.Int(0, 255));
    const cv::Point p(rng.Int(0, w - 1), rng.Int(0, h - 1));
    if (rng.Coin()) {
      cv::circle(m, p, rng.Int(2, span), color, cv::FILLED);
    } else {
      const cv::Point q(p.x + rng.Int(-span, span), p.y + rng.Int(-span, span));
      cv::rectangle(m, p, q, color, cv::FILLED);
    }
  }
  return m;
}

cv::Mat MirrorPattern(int w, int h, Rng& rng) {
  cv::Mat m = Clutter(w, h, rng);
  const int half = w / 2;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < half; ++x) m.at<cv::Vec3b>(y, w - 1 - x) = m.at<cv::Vec3b>(y, x);
  }
  return m;
}

cv::Mat SceneFrame(int scene, int t, int w, int h) {
  cv::Mat m(h, w, CV_8UC3);
  const double drift = t % 3;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      cv::Vec3b p = Pattern(scene, x + drift, y, w, h);
      for (int c = 0; c < 3; ++c) {
        p[c] = Clamp8(p[c] + 3.0 * HashNoise(static_cast<uint64_t>(scene * 1000 + t),
                                             static_cast<uint64_t>(y * w + x),
                                             static_cast<uint64_t>(c)));
      }
      m.at<cv::Vec3b>(y, x) = p;
    }
  }
  return m;
}

cv::Mat Rotate(const cv::Mat& rgb, double degrees) {
  const cv::Point2f centre(rgb.cols / 2.0f, rgb.rows / 2.0f);
  const cv::Mat r = cv::getRotationMatrix2D(centre, degrees, 1.0);
  cv::Mat out;
  cv::warpAffine(rgb, out, r, rgb.size(), cv::INTER_LINEAR, cv::BORDER_REFLECT);
  return out;
}

cv::Mat Translate(const cv::Mat& rgb, double dx, double dy) {
  const cv::Mat t = (cv::Mat_<double>(2, 3) << 1, 0, dx, 0, 1, dy);
  cv::Mat out;
  cv::warpAffine(rgb, out, t, rgb.size(), cv::INTER_NEAREST, cv::BORDER_REPLICATE);
  return out;
}

void WritePng(const std::filesystem::path& path, const cv::Mat& rgb) {
  std::filesystem::create_directories(path.parent_path());
  cv::Mat bgr;
  cv::cvtColor(rgb, bgr, cv::COLOR_RGB2BGR);
  if (!cv::imwrite(path.string(), bgr)) throw std::runtime_error("cannot write " + path.string());
}

GistDescriptor RandomDescriptor(Rng& rng, size_t dim) {
  GistDescriptor d;
  d.values.resize(dim);
  double norm = 0.0;
  for (double& v : d.values) {
    v = rng.Uniform(0.0, 1.0);
    norm += v * v;
  }
  norm = std::sqrt(norm);
  for (double& v : d.values) v /= norm;
  return d;
}

double EastDegrees(double lat, double km) {
  return km / (kEarthKm * std::cos(lat * kPi / 180.0)) * 180.0 / kPi;
}

std::vector<geo::GpsPoint> Stationary(double lat, double lon, double t0, int count, double dt,
                                      double jitter_m, Rng& rng) {
  std::vector<geo::GpsPoint> out;
  for (int i = 0; i < count; ++i) {
    geo::GpsPoint p;
    p.lat = lat + rng.Uniform(-jitter_m, jitter_m) / 1000.0 / kEarthKm * 180.0 / kPi;
    p.lon = lon + EastDegrees(lat, rng.Uniform(-jitter_m, jitter_m) / 1000.0);
    p.timestamp = t0 + i * dt;
    out.push_back(p);
  }
  return out;
}

std::vector<geo::GpsPoint> DriveEast(double lat, double lon, double t0, double distance_km,
                                     double speed_ms, double dt) {
  std::vector<geo::GpsPoint> out;
  const double total_s = distance_km * 1000.0 / speed_ms;
  for (double t = dt; t <= total_s + 1e-9; t += dt) {
    geo::GpsPoint p;
    p.lat = lat;
    p.lon = lon + EastDegrees(lat, speed_ms * t / 1000.0);
    p.timestamp = t0 + t;
    out.push_back(p);
  }
  return out;
}

std::vector<geo::PoiRecord> MakePois(int count, Rng& rng) {
  std::vector<geo::PoiRecord> out;
  for (int i = 0; i < count; ++i) {
    geo::PoiRecord p;
    p.name = "poi_" + std::to_string(i);
    p.review_count = rng.Int(1, 900);
    p.rating = rng.Int(2, 10) / 2.0;
    p.location.lat = rng.Uniform(-1.0, 1.0);
    p.location.lon = rng.Uniform(-1.0, 1.0);
    out.push_back(p);
  }
  return out;
}

void WriteTrackCsv(const std::filesystem::path& path, const std::vector<geo::GpsPoint>& track) {
  std::ofstream out(path);
  out << "timestamp,lat,lon\n";
  out.precision(17);
  for (const auto& p : track) out << p.timestamp << "," << p.lat << "," << p.lon << "\n";
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

E2ECorpus WriteE2ECorpus(const std::filesystem::path& dir) {
  constexpr int kW = 320;
  constexpr int kH = 180;
  E2ECorpus corpus;
  // cam_a: scenes 0, 1, 2, 5 for 30 frames each.
  const int a_scenes[] = {0, 1, 2, 5};
  for (int s = 0; s < 4; ++s) {
    for (int t = 0; t < 30; ++t) {
      char name[32];
      std::snprintf(name, sizeof(name), "frame_%08d.png", s * 30 + t);
      WritePng(dir / "cam_a" / name, SceneFrame(a_scenes[s], t, kW, kH));
      ++corpus.frames;
    }
  }
  // cam_b: scenes 3 and 4 with a swaying horizon.
  for (int s = 0; s < 2; ++s) {
    for (int t = 0; t < 40; ++t) {
      char name[32];
      std::snprintf(name, sizeof(name), "frame_%08d.png", s * 40 + t);
      const double angle = 6.0 * std::sin(t / 4.0);
      WritePng(dir / "cam_b" / name, Rotate(SceneFrame(3 + s, t, kW, kH), angle));
      ++corpus.frames;
    }
  }
  // Track: node A covers cam_a, node C (no POIs) covers nothing, node B
  // covers cam_b.
  Rng rng(7);
  const double lat = 46.0, lon = 7.0;
  std::vector<geo::GpsPoint> track = Stationary(lat, lon, 990.0, 17, 1.0, 1.0, rng);
  auto append = [&](const std::vector<geo::GpsPoint>& part) {
    track.insert(track.end(), part.begin(), part.end());
  };
  append(DriveEast(lat, lon, 1006.0, 30.0, 25.0, 10.0));
  const double lon_c = lon + EastDegrees(lat, 30.0);
  append(Stationary(lat, lon_c, 2210.0, 90, 1.0, 1.0, rng));
  append(DriveEast(lat, lon_c, 2300.0, 30.0, 25.0, 10.0));
  const double lon_b = lon_c + EastDegrees(lat, 30.0);
  append(Stationary(lat, lon_b, 3505.0, 96, 1.0, 1.0, rng));
  corpus.track = dir / "track.csv";
  WriteTrackCsv(corpus.track, track);

  nlohmann::json manifest = {
      {"sources",
       {{{"source_id", "cam_a"}, {"path", "cam_a"}, {"start_timestamp", 1000.0}, {"fps", 10.0}},
        {{"source_id", "cam_b"}, {"path", "cam_b"}, {"start_timestamp", 3510.0}, {"fps", 10.0}}}},
      {"gps_track", "track.csv"}};
  corpus.manifest = dir / "manifest.json";
  std::ofstream(corpus.manifest) << manifest.dump(2) << "\n";
  return corpus;
}

void SeedPoiCache(const std::filesystem::path& poi_dir, const std::filesystem::path& track,
                  const geo::GeoConfig& cfg, int radius_m) {
  const auto points = geo::WithDerivedSpeeds(geo::ReadTrack(track));
  const auto nodes = geo::AggregateNodes(points, cfg);
  geo::PoiCache cache(poi_dir);
  Rng rng(11);
  for (size_t i = 0; i < nodes.size(); ++i) {
    const geo::PoiQuery q{nodes[i].anchor.lat, nodes[i].anchor.lon, radius_m, ""};
    cache.Store(q, i == 1 ? std::vector<geo::PoiRecord>{} : MakePois(3, rng));
  }
}

void WriteThirdsCropDataset(const std::filesystem::path& dir, int cases, uint64_t seed) {
  Rng rng(seed);
  constexpr int kW = 360;
  constexpr int kH = 240;
  constexpr int kCw = 270;
  constexpr int kCh = 180;
  const double thirds[4][2] = {{1 / 3.0, 1 / 3.0}, {2 / 3.0, 1 / 3.0}, {1 / 3.0, 2 / 3.0},
                               {2 / 3.0, 2 / 3.0}};
  for (int c = 0; c < cases; ++c) {
    const cv::Vec3b fg{static_cast<uint8_t>(rng.Int(180, 255)),
                       static_cast<uint8_t>(rng.Int(0, 120)),
                       static_cast<uint8_t>(rng.Int(0, 90))};
    const cv::Vec3b bg{static_cast<uint8_t>(rng.Int(20, 60)),
                       static_cast<uint8_t>(rng.Int(40, 90)),
                       static_cast<uint8_t>(rng.Int(60, 110))};
    const double r = rng.Uniform(0.08, 0.14);
    const cv::Mat original = Disc(kW, kH, 0.5, 0.5, r, fg, bg);
    char name[32];
    std::snprintf(name, sizeof(name), "case_%02d", c);
    const auto case_dir = dir / name;
    WritePng(case_dir / "original.png", original);
    const int first = rng.Int(0, 3);
    for (int k = 0; k < 3; ++k) {
      const auto& tp = thirds[(first + k) % 4];
      const int ox = static_cast<int>(std::lround(kW / 2.0 - tp[0] * kCw));
      const int oy = static_cast<int>(std::lround(kH / 2.0 - tp[1] * kCh));
      std::snprintf(name, sizeof(name), "crop_%02d.png", k + 1);
      WritePng(case_dir / name, original(cv::Rect(ox, oy, kCw, kCh)).clone());
    }
  }
}

}  // namespace egohl::fixtures
