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

#ifndef EGOHL_SEGMENTATION_HPP_
#define EGOHL_SEGMENTATION_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include <opencv2/core.hpp>

#include "egohl/color.hpp"

namespace egohl {

struct SegmentationConfig {
  // Graph-based grouping constant (LAB units x pixels); larger values favour
  // larger initial regions.
  double graph_k = 60.0;
  // Regions smaller than this fraction of the frame are absorbed by their
  // most similar neighbour.
  double min_segment_fraction = 0.002;
  // Adjacent regions keep merging while their mean LAB colours are closer
  // than this.
  double coarseness = 10.0;
  // Segment count up to which the simplicity weight stays at 1.
  int simplicity_plateau = 12;

  void Validate() const;
  std::string Fingerprint() const;
};

struct SegmentStat {
  size_t size = 0;
  double cx = 0.0;  // normalized centroid, (0, 1)
  double cy = 0.0;
  Lab mean_lab;
};

struct SegmentMap {
  int width = 0;
  int height = 0;
  std::vector<int> labels;  // row-major, dense 0..M-1 in raster order
  std::vector<SegmentStat> segments;

  size_t M() const { return segments.size(); }
};

SegmentMap Segment(const cv::Mat& rgb, const SegmentationConfig& cfg);

// Recomputes per-segment statistics from a label map.
std::vector<SegmentStat> ComputeSegmentStats(const std::vector<Lab>& lab, int width,
                                             int height, const std::vector<int>& labels,
                                             size_t count);

// 1 for M <= plateau, plateau / M beyond.
double SimplicityWeight(size_t segment_count, int plateau = 12);

// Debug export: 16-bit grayscale PNG whose pixel values are the labels.
void WriteLabelPng(const SegmentMap& map, const std::filesystem::path& path);

}  // namespace egohl

#endif  // EGOHL_SEGMENTATION_HPP_
