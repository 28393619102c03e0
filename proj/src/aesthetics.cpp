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

#include "egohl/aesthetics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

namespace egohl {

CompositionResult CompositionScore(const SegmentMap& segmap, const ThirdsGeometry& geom,
                                   const ColorBinTable& table, int simplicity_plateau) {
  CompositionResult result;
  const size_t m = segmap.M();
  if (m == 0) return result;
  const double area = static_cast<double>(segmap.width) * segmap.height;

  std::vector<double> weighted(m);
  for (size_t j = 0; j < m; ++j) {
    const SegmentStat& s = segmap.segments[j];
    weighted[j] = static_cast<double>(s.size) / area * table.Assign(s.mean_lab).weight;
  }
  for (size_t p = 0; p < ThirdsGeometry::kPoints.size(); ++p) {
    const auto& pt = ThirdsGeometry::kPoints[p];
    double sum = 0.0;
    for (size_t j = 0; j < m; ++j) {
      const SegmentStat& s = segmap.segments[j];
      const double d = std::hypot(s.cx - pt[0], s.cy - pt[1]);
      sum += weighted[j] / std::max(geom.d_epsilon, d);
    }
    result.per_point[p] = sum / static_cast<double>(m);
  }
  // First maximum wins ties.
  result.best_point = static_cast<int>(
      std::max_element(result.per_point.begin(), result.per_point.end()) -
      result.per_point.begin());
  result.raw_score = result.per_point[static_cast<size_t>(result.best_point)];
  result.simplicity = SimplicityWeight(m, simplicity_plateau);
  result.score = result.simplicity * result.raw_score;
  return result;
}

double VibrancyScore(const cv::Mat& rgb, const ColorBinTable& table,
                     const VibrancyConfig& cfg) {
  CV_Assert(rgb.type() == CV_8UC3);
  const size_t n = static_cast<size_t>(rgb.rows) * rgb.cols;
  if (n == 0) return 0.0;
  // Work on the sorted multiset of colours so the sum is independent of
  // pixel order.
  std::vector<uint32_t> codes;
  codes.reserve(n);
  for (int y = 0; y < rgb.rows; ++y) {
    const auto* row = rgb.ptr<cv::Vec3b>(y);
    for (int x = 0; x < rgb.cols; ++x) {
      codes.push_back(static_cast<uint32_t>(row[x][0]) << 16 |
                      static_cast<uint32_t>(row[x][1]) << 8 | row[x][2]);
    }
  }
  std::sort(codes.begin(), codes.end());

  std::array<double, kColorBinCount> count{};
  std::array<double, kColorBinCount> dist_sum{};
  for (size_t i = 0; i < codes.size();) {
    size_t j = i;
    while (j < codes.size() && codes[j] == codes[i]) ++j;
    const uint32_t c = codes[i];
    const Lab lab = SrgbToLab(static_cast<uint8_t>(c >> 16), static_cast<uint8_t>(c >> 8),
                              static_cast<uint8_t>(c));
    const BinAssignment bin = table.Assign(lab);
    const double run = static_cast<double>(j - i);
    count[bin.index] += run;
    dist_sum[bin.index] += run * bin.distance;
    i = j;
  }
  double score = 0.0;
  for (size_t b = 0; b < kColorBinCount; ++b) {
    if (count[b] == 0.0) continue;
    const double b_size = count[b] / static_cast<double>(n);
    const double b_dist = std::max(cfg.d_epsilon_bin, dist_sum[b] / count[b]);
    score += table.bins()[b].weight * b_size / b_dist;
  }
  return score;
}

FrameAesthetics ScoreAesthetics(const cv::Mat& rgb, const AestheticsSettings& settings) {
  FrameAesthetics out;
  const SegmentMap segmap = Segment(rgb, settings.segmentation);
  out.segment_count = segmap.M();
  out.composition = CompositionScore(segmap, settings.thirds, settings.table,
                                     settings.segmentation.simplicity_plateau);
  out.symmetry = SymmetryScore(rgb, settings.symmetry);
  out.vibrancy = VibrancyScore(rgb, settings.table, settings.vibrancy);
  return out;
}

}  // namespace egohl
