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

#include "egohl/gist.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include <opencv2/imgproc.hpp>

#include "egohl/error.hpp"

namespace egohl {
namespace {

constexpr double kPi = std::numbers::pi;

// Signed frequency of FFT bin u for a transform of length n.
inline double Freq(int u, int n) { return u < n / 2 ? u : u - n; }

cv::Mat ToGray(const cv::Mat& rgb) {
  cv::Mat gray(rgb.size(), CV_32F);
  for (int y = 0; y < rgb.rows; ++y) {
    const auto* in = rgb.ptr<cv::Vec3b>(y);
    auto* out = gray.ptr<float>(y);
    for (int x = 0; x < rgb.cols; ++x) {
      out[x] = static_cast<float>(0.299 * in[x][0] + 0.587 * in[x][1] + 0.114 * in[x][2]);
    }
  }
  return gray;
}

// Resize the short side to `size`, then center-crop to a square.
cv::Mat ResizeCrop(const cv::Mat& gray, int size) {
  const double scale = static_cast<double>(size) / std::min(gray.cols, gray.rows);
  const int w = std::max(size, static_cast<int>(std::lround(gray.cols * scale)));
  const int h = std::max(size, static_cast<int>(std::lround(gray.rows * scale)));
  cv::Mat resized;
  cv::resize(gray, resized, cv::Size(w, h), 0, 0,
             scale < 1.0 ? cv::INTER_AREA : cv::INTER_LINEAR);
  const int x0 = (w - size) / 2;
  const int y0 = (h - size) / 2;
  return resized(cv::Rect(x0, y0, size, size)).clone();
}

// Multiplies a complex spectrum (CV_32FC2) by a real transfer function.
void MulReal(cv::Mat& spectrum, const cv::Mat& transfer) {
  for (int y = 0; y < spectrum.rows; ++y) {
    auto* s = spectrum.ptr<cv::Vec2f>(y);
    const auto* t = transfer.ptr<float>(y);
    for (int x = 0; x < spectrum.cols; ++x) {
      s[x][0] *= t[x];
      s[x][1] *= t[x];
    }
  }
}

cv::Mat Lowpass(const cv::Mat& img, const cv::Mat& transfer) {
  cv::Mat spectrum;
  cv::dft(img, spectrum, cv::DFT_COMPLEX_OUTPUT);
  MulReal(spectrum, transfer);
  cv::Mat out;
  cv::idft(spectrum, out, cv::DFT_SCALE | cv::DFT_REAL_OUTPUT);
  return out;
}

// Whitening plus local contrast normalization on log intensities.
cv::Mat Prefilter(const cv::Mat& img, double fc) {
  constexpr int kPad = 5;
  const double s1 = fc / std::sqrt(std::log(2.0));
  cv::Mat logimg;
  cv::log(img + 1.0f, logimg);
  cv::Mat padded;
  cv::copyMakeBorder(logimg, padded, kPad, kPad, kPad, kPad, cv::BORDER_REFLECT);
  int n = std::max(padded.rows, padded.cols);
  n += n % 2;
  if (n != padded.rows || n != padded.cols) {
    cv::copyMakeBorder(padded, padded, 0, n - padded.rows, 0, n - padded.cols,
                       cv::BORDER_REFLECT);
  }
  cv::Mat gauss(n, n, CV_32F);
  for (int v = 0; v < n; ++v) {
    for (int u = 0; u < n; ++u) {
      const double fx = Freq(u, n);
      const double fy = Freq(v, n);
      gauss.at<float>(v, u) = static_cast<float>(std::exp(-(fx * fx + fy * fy) / (s1 * s1)));
    }
  }
  cv::Mat out = padded - Lowpass(padded, gauss);
  cv::Mat local = Lowpass(out.mul(out), gauss);
  local = cv::abs(local);
  cv::sqrt(local, local);
  out = out / (local + 0.2f);
  return out(cv::Rect(kPad, kPad, img.cols, img.rows)).clone();
}

}  // namespace

void GistConfig::Validate() const {
  if (orientations < 1 || scales < 1 || grid < 1 || image_size < 16 || boundary < 0) {
    Throw(ErrorCode::kInvalidInput, "gist: orientations, scales and grid must be >= 1");
  }
}

std::string GistConfig::Fingerprint() const {
  std::ostringstream os;
  os << "gist/o" << orientations << "/s" << scales << "/g" << grid << "/p" << prefilter
     << "/i" << image_size << "/b" << boundary << "/fc" << prefilter_fc;
  return os.str();
}

GistExtractor::GistExtractor(const GistConfig& cfg) : cfg_(cfg) {
  cfg_.Validate();
  padded_ = cfg_.image_size + 2 * cfg_.boundary;
  const int n = padded_;
  for (int s = 0; s < cfg_.scales; ++s) {
    for (int o = 0; o < cfg_.orientations; ++o) {
      const double p1 = 0.35;
      const double p2 = 0.3 / std::pow(1.85, s);
      const double p3 = 16.0 * cfg_.orientations * cfg_.orientations / (32.0 * 32.0);
      const double p4 = kPi / cfg_.orientations * o;
      cv::Mat g(n, n, CV_32F);
      for (int v = 0; v < n; ++v) {
        for (int u = 0; u < n; ++u) {
          const double fx = Freq(u, n);
          const double fy = Freq(v, n);
          const double fr = std::sqrt(fx * fx + fy * fy);
          double tr = std::atan2(fy, fx) + p4;
          if (tr < -kPi) tr += 2.0 * kPi;
          if (tr > kPi) tr -= 2.0 * kPi;
          const double radial = fr / n / p2 - 1.0;
          g.at<float>(v, u) = static_cast<float>(
              std::exp(-10.0 * p1 * radial * radial - 2.0 * p3 * kPi * tr * tr));
        }
      }
      filters_.push_back(std::move(g));
    }
  }
}

GistDescriptor GistExtractor::Compute(const cv::Mat& rgb) const {
  CV_Assert(rgb.type() == CV_8UC3);
  const int size = cfg_.image_size;
  cv::Mat img = ResizeCrop(ToGray(rgb), size);

  double lo = 0.0;
  double hi = 0.0;
  cv::minMaxLoc(img, &lo, &hi);
  const int dim = cfg_.Dimension();
  GistDescriptor desc;
  desc.values.assign(static_cast<size_t>(dim), 0.0);

  if (hi - lo > 1e-6) {
    img = (img - lo) * (255.0 / (hi - lo));
    if (cfg_.prefilter) img = Prefilter(img, cfg_.prefilter_fc);

    cv::Mat padded;
    cv::copyMakeBorder(img, padded, cfg_.boundary, cfg_.boundary, cfg_.boundary,
                       cfg_.boundary, cv::BORDER_REFLECT);
    cv::Mat spectrum;
    cv::dft(padded, spectrum, cv::DFT_COMPLEX_OUTPUT);

    const int g = cfg_.grid;
    std::vector<int> edges(static_cast<size_t>(g) + 1);
    for (int k = 0; k <= g; ++k) edges[k] = k * size / g;

    size_t out = 0;
    cv::Mat filtered;
    cv::Mat response;
    for (const cv::Mat& transfer : filters_) {
      filtered = spectrum.clone();
      MulReal(filtered, transfer);
      cv::idft(filtered, response, cv::DFT_SCALE | cv::DFT_COMPLEX_OUTPUT);
      for (int by = 0; by < g; ++by) {
        for (int bx = 0; bx < g; ++bx) {
          double sum = 0.0;
          for (int y = edges[by]; y < edges[by + 1]; ++y) {
            const auto* row = response.ptr<cv::Vec2f>(y + cfg_.boundary);
            for (int x = edges[bx]; x < edges[bx + 1]; ++x) {
              const cv::Vec2f c = row[x + cfg_.boundary];
              sum += std::sqrt(static_cast<double>(c[0]) * c[0] +
                               static_cast<double>(c[1]) * c[1]);
            }
          }
          const double area = static_cast<double>(edges[by + 1] - edges[by]) *
                              (edges[bx + 1] - edges[bx]);
          desc.values[out++] = sum / area;
        }
      }
    }
  }

  double norm = 0.0;
  for (double v : desc.values) norm += v * v;
  norm = std::sqrt(norm);
  if (!(norm > 1e-12) || !std::isfinite(norm)) {
    desc.values.assign(static_cast<size_t>(dim), 1.0 / std::sqrt(static_cast<double>(dim)));
    return desc;
  }
  for (double& v : desc.values) v /= norm;
  return desc;
}

GistDescriptor Gist(const cv::Mat& rgb, const GistConfig& cfg) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const GistExtractor>> cache;
  std::shared_ptr<const GistExtractor> extractor;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[cfg.Fingerprint()];
    if (!slot) slot = std::make_shared<GistExtractor>(cfg);
    extractor = slot;
  }
  return extractor->Compute(rgb);
}

double GistSimilarity(const GistDescriptor& a, const GistDescriptor& b) {
  if (a.size() != b.size()) {
    Throw(ErrorCode::kInvalidInput, "gist: descriptor dimension mismatch (" +
                                        std::to_string(a.size()) + " vs " +
                                        std::to_string(b.size()) + ")");
  }
  double dot = 0.0;
  for (size_t i = 0; i < a.size(); ++i) dot += a.values[i] * b.values[i];
  return std::clamp(dot, 0.0, 1.0);
}

}  // namespace egohl
