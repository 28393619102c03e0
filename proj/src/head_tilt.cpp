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

#include "egohl/head_tilt.hpp"

#include <algorithm>
#include <cstdint>

#include "egohl/error.hpp"
#include "egohl/shots.hpp"

namespace egohl {
namespace {

void CheckSameSize(const cv::Mat& a, const cv::Mat& b) {
  if (a.size() != b.size() || a.type() != b.type()) {
    Throw(ErrorCode::kInvalidInput, "head tilt: raster dimension mismatch");
  }
}

cv::Mat RoundedMean(const cv::Mat& sums, int count) {
  cv::Mat out(sums.size(), CV_8UC3);
  const int64_t n = count;
  for (int y = 0; y < sums.rows; ++y) {
    const auto* s = sums.ptr<int32_t>(y);
    auto* o = out.ptr<uint8_t>(y);
    for (int x = 0; x < sums.cols * 3; ++x) {
      // floor(sum / n + 1/2)
      o[x] = static_cast<uint8_t>((2 * static_cast<int64_t>(s[x]) + n) / (2 * n));
    }
  }
  return out;
}

void Accumulate(cv::Mat& sums, const cv::Mat& frame, int sign) {
  for (int y = 0; y < sums.rows; ++y) {
    auto* s = sums.ptr<int32_t>(y);
    const auto* f = frame.ptr<uint8_t>(y);
    for (int x = 0; x < sums.cols * 3; ++x) s[x] += sign * f[x];
  }
}

}  // namespace

void TiltConfig::Validate() const {
  if (window < 1 || window % 2 == 0) {
    Throw(ErrorCode::kInvalidInput, "head tilt: window must be odd and positive");
  }
  if (ssim_block < 1) Throw(ErrorCode::kInvalidInput, "head tilt: bad SSIM block");
}

cv::Mat AverageFrame(std::span<const cv::Mat> frames) {
  if (frames.empty()) Throw(ErrorCode::kInvalidInput, "head tilt: empty window");
  cv::Mat sums = cv::Mat::zeros(frames[0].size(), CV_32SC3);
  for (const cv::Mat& f : frames) {
    CheckSameSize(frames[0], f);
    if (f.type() != CV_8UC3) Throw(ErrorCode::kInvalidInput, "head tilt: expected RGB8");
    Accumulate(sums, f, +1);
  }
  return RoundedMean(sums, static_cast<int>(frames.size()));
}

cv::Mat Luminance(const cv::Mat& rgb) {
  cv::Mat y(rgb.size(), CV_64F);
  for (int r = 0; r < rgb.rows; ++r) {
    const auto* in = rgb.ptr<cv::Vec3b>(r);
    auto* out = y.ptr<double>(r);
    for (int c = 0; c < rgb.cols; ++c) {
      out[c] = 0.299 * in[c][0] + 0.587 * in[c][1] + 0.114 * in[c][2];
    }
  }
  return y;
}

double Ssim(const cv::Mat& a, const cv::Mat& b, const TiltConfig& cfg) {
  CheckSameSize(a, b);
  const int block = cfg.ssim_block;
  const int bx = a.cols / block;
  const int by = a.rows / block;
  if (bx < 1 || by < 1) {
    Throw(ErrorCode::kInvalidInput, "ssim: frame smaller than one block");
  }
  const cv::Mat la = Luminance(a);
  const cv::Mat lb = Luminance(b);
  const double n = static_cast<double>(block) * block;
  double total = 0.0;
  for (int ty = 0; ty < by; ++ty) {
    for (int tx = 0; tx < bx; ++tx) {
      double sa = 0.0, sb = 0.0, saa = 0.0, sbb = 0.0, sab = 0.0;
      for (int y = ty * block; y < (ty + 1) * block; ++y) {
        const double* ra = la.ptr<double>(y);
        const double* rb = lb.ptr<double>(y);
        for (int x = tx * block; x < (tx + 1) * block; ++x) {
          sa += ra[x];
          sb += rb[x];
          saa += ra[x] * ra[x];
          sbb += rb[x] * rb[x];
          sab += ra[x] * rb[x];
        }
      }
      const double mu_a = sa / n;
      const double mu_b = sb / n;
      const double var_a = saa / n - mu_a * mu_a;
      const double var_b = sbb / n - mu_b * mu_b;
      const double cov = sab / n - mu_a * mu_b;
      total += ((2.0 * mu_a * mu_b + cfg.c1) * (2.0 * cov + cfg.c2)) /
               ((mu_a * mu_a + mu_b * mu_b + cfg.c1) * (var_a + var_b + cfg.c2));
    }
  }
  return total / (static_cast<double>(bx) * by);
}

double HeadScore(size_t i, std::span<const cv::Mat> frames, const TiltConfig& cfg) {
  cfg.Validate();
  if (i >= frames.size()) Throw(ErrorCode::kInvalidInput, "head tilt: index out of range");
  const auto [lo, hi] = GammaWindow(i, frames.size(), cfg.window);
  if (hi - lo <= 1) return Ssim(frames[i], frames[i], cfg);
  return Ssim(frames[i], AverageFrame(frames.subspan(lo, hi - lo)), cfg);
}

std::vector<double> HeadScores(std::span<const cv::Mat> frames, const TiltConfig& cfg) {
  cfg.Validate();
  std::vector<double> scores(frames.size());
  if (frames.empty()) return scores;
  for (const cv::Mat& f : frames) {
    CheckSameSize(frames[0], f);
    if (f.type() != CV_8UC3) Throw(ErrorCode::kInvalidInput, "head tilt: expected RGB8");
  }
  cv::Mat sums = cv::Mat::zeros(frames[0].size(), CV_32SC3);
  size_t lo = 0;
  size_t hi = 0;
  for (size_t i = 0; i < frames.size(); ++i) {
    const auto [wlo, whi] = GammaWindow(i, frames.size(), cfg.window);
    while (hi < whi) Accumulate(sums, frames[hi++], +1);
    while (lo < wlo) Accumulate(sums, frames[lo++], -1);
    const cv::Mat avg = RoundedMean(sums, static_cast<int>(hi - lo));
    scores[i] = Ssim(frames[i], avg, cfg);
  }
  return scores;
}

}  // namespace egohl
