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

#ifndef EGOHL_AESTHETICS_HPP_
#define EGOHL_AESTHETICS_HPP_

#include <array>
#include <string>

#include <opencv2/core.hpp>

#include "egohl/color.hpp"
#include "egohl/segmentation.hpp"

namespace egohl {

struct ThirdsGeometry {
  static constexpr std::array<std::array<double, 2>, 4> kPoints = {{
      {1.0 / 3.0, 1.0 / 3.0},
      {2.0 / 3.0, 1.0 / 3.0},
      {1.0 / 3.0, 2.0 / 3.0},
      {2.0 / 3.0, 2.0 / 3.0},
  }};
  double d_epsilon = 0.05;  // distance clamp, normalized units
};

struct CompositionResult {
  double score = 0.0;        // simplicity-weighted, at the best point
  double raw_score = 0.0;    // before the simplicity weight
  double simplicity = 1.0;
  int best_point = 0;        // index into ThirdsGeometry::kPoints
  std::array<double, 4> per_point{};  // raw score at each point
};

// Mean over segments of size_fraction * bin_weight / max(eps, distance to
// the thirds point), evaluated at all four points; the best point wins. The
// result is scaled by SimplicityWeight(M).
CompositionResult CompositionScore(const SegmentMap& segmap, const ThirdsGeometry& geom,
                                   const ColorBinTable& table, int simplicity_plateau = 12);

struct VibrancyConfig {
  double d_epsilon_bin = 1.0;  // LAB units
};

// Sum over bins of weight * pixel_fraction / max(eps, mean LAB distance to
// the bin representative). Depends only on the colour histogram.
double VibrancyScore(const cv::Mat& rgb, const ColorBinTable& table,
                     const VibrancyConfig& cfg = {});

struct SymmetryConfig {
  int k = 200;                // strongest keypoints retained
  double match_ratio = 0.8;   // nearest / second-nearest descriptor distance
  int min_pairs = 4;
  // Mirror consistency tolerance as a fraction of the frame's longer side.
  double position_tolerance = 0.02;
  // Frames are downscaled to this longest side before keypoint detection;
  // the score is an area fraction, so it does not depend on this choice.
  int max_side = 240;
  bool horizontal_axis = true;
  bool vertical_axis = true;

  void Validate() const;
  std::string Fingerprint() const;
};

struct SymmetryResult {
  double score = 0.0;  // covered area fraction, [0, 1]
  double vertical = 0.0;
  double horizontal = 0.0;
  int pairs = 0;       // accepted pairs on the winning axis
};

// Mirror-matching symmetry: keypoints of the frame are matched against the
// keypoints of its mirror image; mutually-best, ratio-tested pairs whose
// positions agree with a common reflection axis are kept and the bounding
// box of their points, relative to the frame, is the score.
SymmetryResult SymmetryScore(const cv::Mat& rgb, const SymmetryConfig& cfg);

struct AestheticsSettings {
  SegmentationConfig segmentation;
  ThirdsGeometry thirds;
  VibrancyConfig vibrancy;
  SymmetryConfig symmetry;
  ColorBinTable table = ColorBinTable::Default();
};

struct FrameAesthetics {
  CompositionResult composition;
  SymmetryResult symmetry;
  double vibrancy = 0.0;
  size_t segment_count = 0;
};

// Segmentation, composition, symmetry and vibrancy of one raster. Video
// frames and still photos both go through this.
FrameAesthetics ScoreAesthetics(const cv::Mat& rgb, const AestheticsSettings& settings);

}  // namespace egohl

#endif  // EGOHL_AESTHETICS_HPP_
