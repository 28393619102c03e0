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

#ifndef EGOHL_HEAD_TILT_HPP_
#define EGOHL_HEAD_TILT_HPP_

#include <span>
#include <vector>

#include <opencv2/core.hpp>

namespace egohl {

struct TiltConfig {
  int window = 31;  // odd, frames
  int ssim_block = 8;
  double c1 = (0.01 * 255.0) * (0.01 * 255.0);
  double c2 = (0.03 * 255.0) * (0.03 * 255.0);

  void Validate() const;
};

// Per-pixel, per-channel mean of equally sized CV_8UC3 rasters, rounded half
// up.
cv::Mat AverageFrame(std::span<const cv::Mat> frames);

// Luminance (BT.601 weights, unrounded) of an RGB raster as CV_64F.
cv::Mat Luminance(const cv::Mat& rgb);

// Mean SSIM over non-overlapping block x block tiles of the luminance.
double Ssim(const cv::Mat& a, const cv::Mat& b, const TiltConfig& cfg);

// SSIM of frames[i] against the average of the window of `cfg.window`
// frames centred at i, clipped to the sequence.
double HeadScore(size_t i, std::span<const cv::Mat> frames, const TiltConfig& cfg);

// HeadScore for every index, using a running sum so each frame is added and
// removed once.
std::vector<double> HeadScores(std::span<const cv::Mat> frames, const TiltConfig& cfg);

}  // namespace egohl

#endif  // EGOHL_HEAD_TILT_HPP_
