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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include <opencv2/features2d.hpp>
#include <opencv2/imgproc.hpp>

#include "egohl/aesthetics.hpp"
#include "egohl/error.hpp"

namespace egohl {
namespace {

struct Features {
  std::vector<cv::Point2f> points;
  cv::Mat descriptors;  // CV_32F, one row per point
};

// SIFT keypoints in a fixed order (response, then position) so that the top
// k does not depend on the detector's internal scheduling.
Features Detect(const cv::Mat& gray, int k) {
  thread_local cv::Ptr<cv::SIFT> sift = cv::SIFT::create();
  std::vector<cv::KeyPoint> kps;
  cv::Mat desc;
  sift->detectAndCompute(gray, cv::noArray(), kps, desc);

  std::vector<size_t> order(kps.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&kps](size_t l, size_t r) {
    const cv::KeyPoint& a = kps[l];
    const cv::KeyPoint& b = kps[r];
    if (a.response != b.response) return a.response > b.response;
    if (a.pt.y != b.pt.y) return a.pt.y < b.pt.y;
    if (a.pt.x != b.pt.x) return a.pt.x < b.pt.x;
    if (a.size != b.size) return a.size < b.size;
    if (a.angle != b.angle) return a.angle < b.angle;
    return l < r;
  });
  if (order.size() > static_cast<size_t>(k)) order.resize(static_cast<size_t>(k));

  Features f;
  f.descriptors.create(static_cast<int>(order.size()), desc.cols, CV_32F);
  for (size_t i = 0; i < order.size(); ++i) {
    f.points.push_back(kps[order[i]].pt);
    desc.row(static_cast<int>(order[i])).copyTo(f.descriptors.row(static_cast<int>(i)));
  }
  return f;
}

struct Nearest {
  int index = -1;
  double best = std::numeric_limits<double>::infinity();
  double second = std::numeric_limits<double>::infinity();
};

std::vector<Nearest> NearestNeighbours(const cv::Mat& from, const cv::Mat& to) {
  std::vector<Nearest> out(static_cast<size_t>(from.rows));
  for (int i = 0; i < from.rows; ++i) {
    const float* a = from.ptr<float>(i);
    Nearest& n = out[static_cast<size_t>(i)];
    for (int j = 0; j < to.rows; ++j) {
      const float* b = to.ptr<float>(j);
      double d = 0.0;
      for (int c = 0; c < from.cols; ++c) {
        const double diff = static_cast<double>(a[c]) - b[c];
        d += diff * diff;
      }
      d = std::sqrt(d);
      if (d < n.best) {
        n.second = n.best;
        n.best = d;
        n.index = j;
      } else if (d < n.second) {
        n.second = d;
      }
    }
  }
  return out;
}

// Pairs (i, j) that are each other's ratio-tested nearest neighbour. The
// rule is symmetric in its two arguments.
std::vector<std::pair<int, int>> MutualMatches(const Features& a, const Features& b,
                                               double ratio) {
  std::vector<std::pair<int, int>> pairs;
  if (a.points.size() < 2 || b.points.size() < 2) return pairs;
  const auto ab = NearestNeighbours(a.descriptors, b.descriptors);
  const auto ba = NearestNeighbours(b.descriptors, a.descriptors);
  auto passes = [ratio](const Nearest& n) { return n.index >= 0 && n.best < ratio * n.second; };
  for (size_t i = 0; i < ab.size(); ++i) {
    if (!passes(ab[i])) continue;
    const auto j = static_cast<size_t>(ab[i].index);
    if (passes(ba[j]) && ba[j].index == static_cast<int>(i)) {
      pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return pairs;
}

double Median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

struct AxisResult {
  double area = 0.0;
  int pairs = 0;
};

// `original` is the frame, `mirrored` its reflection across the axis
// perpendicular to coordinate `along` (0 = x, 1 = y). extent is the frame
// size along that coordinate.
AxisResult MirrorCoverage(const Features& original, const Features& mirrored, int along,
                          const cv::Size& size, const SymmetryConfig& cfg) {
  const auto matches = MutualMatches(original, mirrored, cfg.match_ratio);
  const double tol = cfg.position_tolerance * std::max(size.width, size.height);
  const double extent = along == 0 ? size.width : size.height;
  auto coord = [along](const cv::Point2f& p, int axis) {
    return static_cast<double>(axis == along ? (along == 0 ? p.x : p.y) : (along == 0 ? p.y : p.x));
  };

  std::vector<std::pair<int, int>> aligned;
  std::vector<double> offsets;
  for (const auto& [i, j] : matches) {
    const auto& a = original.points[static_cast<size_t>(i)];
    const auto& b = mirrored.points[static_cast<size_t>(j)];
    // The cross coordinate is unchanged by the reflection.
    if (std::abs(coord(a, 1 - along) - coord(b, 1 - along)) > tol) continue;
    aligned.emplace_back(i, j);
    offsets.push_back(coord(b, along) - coord(a, along));
  }
  AxisResult result;
  if (static_cast<int>(aligned.size()) < cfg.min_pairs) return result;
  const double axis_offset = Median(offsets);

  double lo[2] = {std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity()};
  double hi[2] = {-std::numeric_limits<double>::infinity(),
                  -std::numeric_limits<double>::infinity()};
  auto extend = [&](double along_v, double cross_v) {
    lo[0] = std::min(lo[0], along_v);
    hi[0] = std::max(hi[0], along_v);
    lo[1] = std::min(lo[1], cross_v);
    hi[1] = std::max(hi[1], cross_v);
  };
  int kept = 0;
  for (size_t n = 0; n < aligned.size(); ++n) {
    if (std::abs(offsets[n] - axis_offset) > tol) continue;
    const auto& a = original.points[static_cast<size_t>(aligned[n].first)];
    const auto& b = mirrored.points[static_cast<size_t>(aligned[n].second)];
    extend(coord(a, along), coord(a, 1 - along));
    // Partner location in the original frame.
    extend(extent - 1.0 - coord(b, along), coord(b, 1 - along));
    ++kept;
  }
  if (kept < cfg.min_pairs) return result;
  const double frame_area = static_cast<double>(size.width) * size.height;
  result.area = std::clamp((hi[0] - lo[0]) * (hi[1] - lo[1]) / frame_area, 0.0, 1.0);
  result.pairs = kept;
  return result;
}

}  // namespace

void SymmetryConfig::Validate() const {
  if (k < 2) Throw(ErrorCode::kInvalidInput, "symmetry: k must be >= 2");
  if (!(match_ratio > 0.0 && match_ratio < 1.0)) {
    Throw(ErrorCode::kInvalidInput, "symmetry: match_ratio must lie in (0, 1)");
  }
  if (min_pairs < 1 || !(position_tolerance > 0.0) || max_side < 32) {
    Throw(ErrorCode::kInvalidInput, "symmetry: invalid configuration");
  }
}

std::string SymmetryConfig::Fingerprint() const {
  std::ostringstream os;
  os.precision(17);
  os << "sym/k" << k << "/r" << match_ratio << "/m" << min_pairs << "/t"
     << position_tolerance << "/s" << max_side << "/h" << horizontal_axis << "/v"
     << vertical_axis;
  return os.str();
}

SymmetryResult SymmetryScore(const cv::Mat& rgb, const SymmetryConfig& cfg) {
  CV_Assert(rgb.type() == CV_8UC3);
  cfg.Validate();
  cv::Mat gray;
  cv::cvtColor(rgb, gray, cv::COLOR_RGB2GRAY);
  const int longest = std::max(gray.cols, gray.rows);
  if (longest > cfg.max_side) {
    const double s = static_cast<double>(cfg.max_side) / longest;
    cv::resize(gray, gray,
               cv::Size(std::max(1, static_cast<int>(std::lround(gray.cols * s))),
                        std::max(1, static_cast<int>(std::lround(gray.rows * s)))),
               0, 0, cv::INTER_AREA);
  }

  cv::Mat flip_h, flip_v, rot;
  cv::flip(gray, flip_h, 1);
  cv::flip(gray, flip_v, 0);
  cv::flip(gray, rot, -1);

  const Features f = Detect(gray, cfg.k);
  const Features fh = Detect(flip_h, cfg.k);
  SymmetryResult result;
  const cv::Size size = gray.size();
  if (cfg.vertical_axis) {
    const AxisResult v = MirrorCoverage(f, fh, 0, size, cfg);
    result.vertical = v.area;
    result.pairs = v.pairs;
  }
  if (cfg.horizontal_axis) {
    const Features fv = Detect(flip_v, cfg.k);
    const Features fr = Detect(rot, cfg.k);
    // Evaluated on the frame and on its left-right mirror so the score is
    // exactly invariant under that mirror.
    const AxisResult h1 = MirrorCoverage(f, fv, 1, size, cfg);
    const AxisResult h2 = MirrorCoverage(fh, fr, 1, size, cfg);
    const AxisResult& h = h1.area >= h2.area ? h1 : h2;
    result.horizontal = h.area;
    if (h.area > result.vertical) result.pairs = h.pairs;
  }
  result.score = std::max(result.vertical, result.horizontal);
  return result;
}

}  // namespace egohl
