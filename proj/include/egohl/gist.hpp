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

#ifndef EGOHL_GIST_HPP_
#define EGOHL_GIST_HPP_

#include <memory>
#include <span>
#include <string>
#include <vector>

#include <opencv2/core.hpp>

namespace egohl {

struct GistConfig {
  int orientations = 8;
  int scales = 4;
  int grid = 4;
  bool prefilter = true;
  int image_size = 128;  // working square size
  int boundary = 32;     // symmetric padding before filtering
  double prefilter_fc = 4.0;

  int Dimension() const { return orientations * scales * grid * grid; }
  void Validate() const;
  std::string Fingerprint() const;
};

struct GistDescriptor {
  std::vector<double> values;  // unit L2 norm

  size_t size() const { return values.size(); }
};

// Holds the precomputed Gabor transfer functions; Compute() is const and
// safe to call from several threads.
class GistExtractor {
 public:
  explicit GistExtractor(const GistConfig& cfg);

  // Grayscale -> resize/crop -> optional local contrast normalization ->
  // Gabor energies pooled on a grid x grid partition -> L2 normalization.
  // A zero response (constant frame) yields the uniform unit vector.
  GistDescriptor Compute(const cv::Mat& rgb) const;

  const GistConfig& config() const { return cfg_; }

 private:
  GistConfig cfg_;
  int padded_ = 0;
  std::vector<cv::Mat> filters_;  // CV_32F, unshifted frequency layout
};

GistDescriptor Gist(const cv::Mat& rgb, const GistConfig& cfg);

// max(0, a . b), capped at 1. Throws on dimension mismatch.
double GistSimilarity(const GistDescriptor& a, const GistDescriptor& b);

}  // namespace egohl

#endif  // EGOHL_GIST_HPP_
