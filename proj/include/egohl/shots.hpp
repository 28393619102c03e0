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

#ifndef EGOHL_SHOTS_HPP_
#define EGOHL_SHOTS_HPP_

#include <span>
#include <vector>

#include "egohl/gist.hpp"

namespace egohl {

struct ShotConfig {
  int window = 15;      // W, frames
  double beta = 0.9;
  int min_shot_len = 1;  // 1 = every sub-beta frame opens a new shot

  void Validate() const;
};

struct ShotAssignment {
  std::vector<int> shot_id;
  std::vector<double> gamma;
  int window = 0;
  double beta = 0.0;

  int ShotCount() const { return shot_id.empty() ? 0 : shot_id.back() + 1; }
};

// Mean pairwise similarity over all C(n, 2) pairs; 1.0 when n < 2.
double GammaScore(std::span<const GistDescriptor> window);

// Window [i - floor(W/2), i + ceil(W/2) - 1], clipped to [0, n).
std::pair<size_t, size_t> GammaWindow(size_t i, size_t n, int window);

// Gamma for every index of a contiguous sequence.
std::vector<double> ComputeGammas(std::span<const GistDescriptor> descriptors,
                                  int window);

// Shot id starts at 0 and increments at each i with gamma_i < beta; the
// breaching frame opens the new shot. With min_shot_len > 1 a breach only
// opens a shot once the current one holds at least that many frames.
ShotAssignment AssignShots(std::span<const double> gammas, double beta,
                           int min_shot_len = 1);

}  // namespace egohl

#endif  // EGOHL_SHOTS_HPP_
