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

#ifndef EGOHL_EVAL_HPP_
#define EGOHL_EVAL_HPP_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "egohl/aesthetics.hpp"
#include "egohl/ingest.hpp"
#include "egohl/ranking.hpp"
#include "json.hpp"

namespace egohl::eval {

struct CropCase {
  std::string dataset_id;  // case directory name
  std::filesystem::path original;
  std::vector<std::filesystem::path> crops;
};

// One directory per case holding original.* and crop_NN.*; cases and crops
// are sorted by name. Directories without an original or any crop are
// skipped with a warning.
std::vector<CropCase> LoadCropDataset(const std::filesystem::path& root);

struct ComponentScores {
  double comp = 0.0;
  double sym = 0.0;
  double vib = 0.0;
};

struct CaseScores {
  std::string dataset_id;
  ComponentScores original;
  std::vector<ComponentScores> crops;
};

struct ScoredCases {
  std::vector<CaseScores> cases;
  std::vector<std::string> excluded;  // "<case>: <reason>"
};

ComponentScores ScoreStill(const cv::Mat& rgb, const AestheticsSettings& settings);

// Scores every image once; cases with an undecodable image are excluded.
ScoredCases ScoreCases(std::span<const CropCase> cases, const AnalysisConfig& analysis,
                       const AestheticsSettings& settings, int parallelism);

struct ImprovementReport {
  double comp = 0.0;  // percent of evaluated cases improved
  double sym = 0.0;
  double vib = 0.0;
  double final = 0.0;
  size_t case_count = 0;  // evaluated cases
  size_t excluded = 0;
  size_t improved_final = 0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;

  nlohmann::json ToJson() const;
};

// A case improves on a metric when strictly more than half of its crops
// score strictly higher than the original.
ImprovementReport Improvement(const ScoredCases& scored, double lambda1, double lambda2);

ImprovementReport CropImprovement(std::span<const CropCase> cases,
                                  const AnalysisConfig& analysis,
                                  const AestheticsSettings& settings, double lambda1,
                                  double lambda2, int parallelism);

// lambda1 = i / steps, lambda2 = (steps - i) / steps for i = 0..steps,
// reusing the component scores.
std::vector<ImprovementReport> LambdaSweep(const ScoredCases& scored, int steps = 10);

// CSV: lambda1,lambda2,final_pct,comp_pct,sym_pct,vib_pct
std::string SweepCsv(std::span<const ImprovementReport> curve);

}  // namespace egohl::eval

#endif  // EGOHL_EVAL_HPP_
