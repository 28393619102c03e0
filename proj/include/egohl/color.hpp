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

#ifndef EGOHL_COLOR_HPP_
#define EGOHL_COLOR_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <opencv2/core.hpp>

#include "json.hpp"

namespace egohl {

struct Lab {
  double L = 0.0;
  double a = 0.0;
  double b = 0.0;
};

double LabDistance(const Lab& x, const Lab& y);

// sRGB (8-bit, gamma-encoded) to CIELAB with a D65 reference white. Bin
// assignment depends on this transform bit for bit, so every caller goes
// through here.
Lab SrgbToLab(uint8_t r, uint8_t g, uint8_t b);

// Per-pixel LAB of an RGB (CV_8UC3) raster, row-major.
std::vector<Lab> RasterToLab(const cv::Mat& rgb);

struct ColorBin {
  std::string name;
  Lab representative;
  double weight = 0.0;  // [0, 1]
};

inline constexpr size_t kColorBinCount = 12;

struct BinAssignment {
  size_t index = 0;
  double weight = 0.0;
  double distance = 0.0;
};

class ColorBinTable {
 public:
  // The shipped table (identical to assets/colorbins.json).
  static ColorBinTable Default();
  static ColorBinTable FromJson(const nlohmann::json& j);
  static ColorBinTable Load(const std::filesystem::path& path);

  explicit ColorBinTable(std::array<ColorBin, kColorBinCount> bins);

  // Nearest representative by Euclidean LAB distance; ties go to the lowest
  // index.
  BinAssignment Assign(const Lab& lab) const;

  const std::array<ColorBin, kColorBinCount>& bins() const { return bins_; }
  nlohmann::json ToJson() const;

  // Mutable access for experiments that perturb weights.
  void set_weight(size_t index, double weight);

 private:
  std::array<ColorBin, kColorBinCount> bins_;
};

}  // namespace egohl

#endif  // EGOHL_COLOR_HPP_
