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

#include "egohl/shots.hpp"

#include <algorithm>

#include "egohl/error.hpp"

namespace egohl {

void ShotConfig::Validate() const {
  if (window < 2) Throw(ErrorCode::kInvalidInput, "shots: window must be >= 2");
  if (!(beta >= 0.0 && beta <= 1.0)) {
    Throw(ErrorCode::kInvalidInput, "shots: beta must lie in [0, 1]");
  }
  if (min_shot_len < 1) Throw(ErrorCode::kInvalidInput, "shots: min_shot_len must be >= 1");
}

double GammaScore(std::span<const GistDescriptor> window) {
  const size_t n = window.size();
  if (n < 2) return 1.0;
  double sum = 0.0;
  for (size_t p = 0; p + 1 < n; ++p) {
    for (size_t q = p + 1; q < n; ++q) sum += GistSimilarity(window[p], window[q]);
  }
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  return std::clamp(sum / pairs, 0.0, 1.0);
}

std::pair<size_t, size_t> GammaWindow(size_t i, size_t n, int window) {
  const long long half_floor = window / 2;
  const long long half_ceil = (window + 1) / 2;
  const long long lo = static_cast<long long>(i) - half_floor;
  const long long hi = static_cast<long long>(i) + half_ceil;  // exclusive
  return {static_cast<size_t>(std::max(0LL, lo)),
          static_cast<size_t>(std::min(static_cast<long long>(n), hi))};
}

std::vector<double> ComputeGammas(std::span<const GistDescriptor> descriptors,
                                  int window) {
  if (window < 2) Throw(ErrorCode::kInvalidInput, "shots: window must be >= 2");
  const size_t n = descriptors.size();
  // Similarities of every pair closer than W, computed once.
  const size_t reach = static_cast<size_t>(window) - 1;
  std::vector<std::vector<double>> near(n);
  for (size_t p = 0; p < n; ++p) {
    const size_t last = std::min(n, p + reach + 1);
    near[p].reserve(last - p);
    for (size_t q = p + 1; q < last; ++q) {
      near[p].push_back(GistSimilarity(descriptors[p], descriptors[q]));
    }
  }
  std::vector<double> gammas(n, 1.0);
  for (size_t i = 0; i < n; ++i) {
    const auto [lo, hi] = GammaWindow(i, n, window);
    const size_t m = hi - lo;
    if (m < 2) continue;
    double sum = 0.0;
    for (size_t p = lo; p + 1 < hi; ++p) {
      for (size_t q = p + 1; q < hi; ++q) sum += near[p][q - p - 1];
    }
    gammas[i] = std::clamp(sum / (static_cast<double>(m) * (m - 1) / 2.0), 0.0, 1.0);
  }
  return gammas;
}

ShotAssignment AssignShots(std::span<const double> gammas, double beta,
                           int min_shot_len) {
  if (min_shot_len < 1) Throw(ErrorCode::kInvalidInput, "shots: min_shot_len must be >= 1");
  ShotAssignment out;
  out.beta = beta;
  out.gamma.assign(gammas.begin(), gammas.end());
  out.shot_id.resize(gammas.size());
  int shot = 0;
  size_t shot_start = 0;
  for (size_t i = 0; i < gammas.size(); ++i) {
    const bool debounced =
        min_shot_len > 1 && i - shot_start < static_cast<size_t>(min_shot_len);
    if (gammas[i] < beta && !debounced) {
      ++shot;
      shot_start = i;
    }
    out.shot_id[i] = shot;
  }
  return out;
}

}  // namespace egohl
