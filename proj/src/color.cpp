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

#include "egohl/color.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "egohl/error.hpp"

namespace egohl {
namespace {

// sRGB -> XYZ (D65) and reference white, as used by most image libraries.
constexpr double kM[3][3] = {{0.412453, 0.357580, 0.180423},
                             {0.212671, 0.715160, 0.072169},
                             {0.019334, 0.119193, 0.950227}};
constexpr double kWhite[3] = {0.95047, 1.0, 1.08883};

struct LinearTable {
  std::array<double, 256> v{};
  LinearTable() {
    for (int i = 0; i < 256; ++i) {
      const double c = i / 255.0;
      v[i] = c > 0.04045 ? std::pow((c + 0.055) / 1.055, 2.4) : c / 12.92;
    }
  }
};

const LinearTable& Linear() {
  static const LinearTable table;
  return table;
}

double LabF(double t) {
  constexpr double kEps = 0.008856;
  return t > kEps ? std::cbrt(t) : 7.787 * t + 16.0 / 116.0;
}

void CheckBin(const ColorBin& bin) {
  if (!(bin.weight >= 0.0 && bin.weight <= 1.0)) {
    Throw(ErrorCode::kInvalidInput, "color bins: weight outside [0, 1] for " + bin.name);
  }
  if (!std::isfinite(bin.representative.L) || !std::isfinite(bin.representative.a) ||
      !std::isfinite(bin.representative.b)) {
    Throw(ErrorCode::kInvalidInput, "color bins: non-finite representative for " + bin.name);
  }
}

}  // namespace

double LabDistance(const Lab& x, const Lab& y) {
  const double dl = x.L - y.L;
  const double da = x.a - y.a;
  const double db = x.b - y.b;
  return std::sqrt(dl * dl + da * da + db * db);
}

Lab SrgbToLab(uint8_t r, uint8_t g, uint8_t b) {
  const auto& lin = Linear().v;
  const double rgb[3] = {lin[r], lin[g], lin[b]};
  double xyz[3];
  for (int i = 0; i < 3; ++i) {
    xyz[i] = (kM[i][0] * rgb[0] + kM[i][1] * rgb[1] + kM[i][2] * rgb[2]) / kWhite[i];
  }
  const double fx = LabF(xyz[0]);
  const double fy = LabF(xyz[1]);
  const double fz = LabF(xyz[2]);
  const double L = xyz[1] > 0.008856 ? 116.0 * fy - 16.0 : 903.3 * xyz[1];
  return {L, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

std::vector<Lab> RasterToLab(const cv::Mat& rgb) {
  CV_Assert(rgb.type() == CV_8UC3);
  std::vector<Lab> out;
  out.reserve(static_cast<size_t>(rgb.rows) * rgb.cols);
  for (int y = 0; y < rgb.rows; ++y) {
    const auto* row = rgb.ptr<cv::Vec3b>(y);
    for (int x = 0; x < rgb.cols; ++x) {
      out.push_back(SrgbToLab(row[x][0], row[x][1], row[x][2]));
    }
  }
  return out;
}

ColorBinTable ColorBinTable::Default() {
  return ColorBinTable({{
      {"red", {48.1229, 66.5214, 46.0521}, 1.0},
      {"orange", {67.5614, 31.1055, 67.7773}, 0.95},
      {"yellow", {86.9321, -10.2409, 80.967}, 0.9},
      {"green", {61.6843, -52.8414, 46.2646}, 0.8},
      {"cyan", {70.4862, -33.4591, -15.8159}, 0.75},
      {"blue", {39.3087, 34.0149, -70.622}, 0.8},
      {"purple", {36.3219, 51.3537, -51.7532}, 0.7},
      {"magenta", {50.1259, 70.1358, -23.0325}, 0.85},
      {"skin", {75.2734, 14.1857, 22.389}, 0.6},
      {"light-neutral", {89.5306, -0.0022, 0.0042}, 0.4},
      {"mid-gray", {53.585, -0.0015, 0.0028}, 0.2},
      {"dark-neutral", {6.3189, -0.0004, 0.0008}, 0.1},
  }});
}

ColorBinTable::ColorBinTable(std::array<ColorBin, kColorBinCount> bins)
    : bins_(std::move(bins)) {
  for (const auto& bin : bins_) CheckBin(bin);
}

ColorBinTable ColorBinTable::FromJson(const nlohmann::json& j) {
  std::array<ColorBin, kColorBinCount> bins;
  try {
    const auto& arr = j.at("bins");
    if (!arr.is_array() || arr.size() != kColorBinCount) {
      Throw(ErrorCode::kInvalidInput, "color bins: expected exactly 12 bins");
    }
    for (size_t i = 0; i < kColorBinCount; ++i) {
      const auto& e = arr[i];
      const auto& lab = e.at("representative_lab");
      bins[i].name = e.value("name", "bin" + std::to_string(i));
      bins[i].representative = {lab.at(0).get<double>(), lab.at(1).get<double>(),
                                lab.at(2).get<double>()};
      bins[i].weight = e.at("weight").get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    Throw(ErrorCode::kInvalidInput, std::string("color bins: ") + e.what());
  }
  return ColorBinTable(std::move(bins));
}

ColorBinTable ColorBinTable::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Throw(ErrorCode::kIo, "cannot open color bin table " + path.string());
  try {
    return FromJson(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    Throw(ErrorCode::kInvalidInput,
          "color bins: " + path.string() + ": " + e.what());
  }
}

BinAssignment ColorBinTable::Assign(const Lab& lab) const {
  BinAssignment best;
  double best_sq = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < kColorBinCount; ++i) {
    const Lab& r = bins_[i].representative;
    const double dl = lab.L - r.L;
    const double da = lab.a - r.a;
    const double db = lab.b - r.b;
    const double sq = dl * dl + da * da + db * db;
    if (sq < best_sq) {
      best_sq = sq;
      best.index = i;
    }
  }
  best.weight = bins_[best.index].weight;
  best.distance = std::sqrt(best_sq);
  return best;
}

nlohmann::json ColorBinTable::ToJson() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& bin : bins_) {
    arr.push_back({{"name", bin.name},
                   {"representative_lab",
                    {bin.representative.L, bin.representative.a, bin.representative.b}},
                   {"weight", bin.weight}});
  }
  return {{"bins", std::move(arr)}};
}

void ColorBinTable::set_weight(size_t index, double weight) {
  if (index >= kColorBinCount) Throw(ErrorCode::kInvalidInput, "color bins: bad index");
  ColorBin updated = bins_[index];
  updated.weight = weight;
  CheckBin(updated);
  bins_[index] = std::move(updated);
}

}  // namespace egohl
