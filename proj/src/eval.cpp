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

#include "egohl/eval.hpp"

#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "egohl/error.hpp"
#include "egohl/parallel.hpp"

namespace egohl::eval {
namespace {

bool IsImage(const std::filesystem::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext == ".png" || ext == ".jpg" || ext == ".jpeg" || ext == ".bmp" ||
         ext == ".tif" || ext == ".tiff";
}

bool MajorityHigher(std::span<const double> crops, double original) {
  size_t higher = 0;
  for (double c : crops) {
    if (c > original) ++higher;
  }
  return 2 * higher > crops.size();
}

double Final(const ComponentScores& s, double l1, double l2) {
  FrameScores f;
  f.s_comp = s.comp;
  f.s_sym = s.sym;
  f.s_vib = s.vib;
  RankConfig cfg;
  cfg.lambda1 = l1;
  cfg.lambda2 = l2;
  return FinalScore(f, cfg);
}

}  // namespace

std::vector<CropCase> LoadCropDataset(const std::filesystem::path& root) {
  std::error_code ec;
  if (!std::filesystem::is_directory(root, ec)) {
    Throw(ErrorCode::kIo, "crop dataset directory missing: " + root.string());
  }
  std::vector<std::filesystem::path> dirs;
  for (const auto& entry : std::filesystem::directory_iterator(root)) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  std::vector<CropCase> cases;
  for (const auto& dir : dirs) {
    CropCase c;
    c.dataset_id = dir.filename().string();
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (!entry.is_regular_file() || !IsImage(entry.path())) continue;
      const std::string stem = entry.path().stem().string();
      if (stem == "original") {
        c.original = entry.path();
      } else if (stem.rfind("crop_", 0) == 0) {
        c.crops.push_back(entry.path());
      }
    }
    std::sort(c.crops.begin(), c.crops.end());
    if (c.original.empty() || c.crops.empty()) {
      spdlog::warn("eval: skipping {}: needs original.* and at least one crop_*", c.dataset_id);
      continue;
    }
    cases.push_back(std::move(c));
  }
  return cases;
}

ComponentScores ScoreStill(const cv::Mat& rgb, const AestheticsSettings& settings) {
  const FrameAesthetics a = ScoreAesthetics(rgb, settings);
  return {a.composition.score, a.symmetry.score, a.vibrancy};
}

ScoredCases ScoreCases(std::span<const CropCase> cases, const AnalysisConfig& analysis,
                       const AestheticsSettings& settings, int parallelism) {
  std::vector<std::optional<CaseScores>> slots(cases.size());
  std::vector<std::string> reasons(cases.size());
  ParallelFor(cases.size(), parallelism, [&](size_t i) {
    const CropCase& c = cases[i];
    try {
      CaseScores s;
      s.dataset_id = c.dataset_id;
      s.original = ScoreStill(DecodeImage(c.original, analysis), settings);
      for (const auto& crop : c.crops) {
        s.crops.push_back(ScoreStill(DecodeImage(crop, analysis), settings));
      }
      slots[i] = std::move(s);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDecode && e.code() != ErrorCode::kIo) throw;
      reasons[i] = c.dataset_id + ": " + e.what();
    }
  });
  ScoredCases out;
  for (size_t i = 0; i < cases.size(); ++i) {
    if (slots[i]) {
      out.cases.push_back(std::move(*slots[i]));
    } else {
      spdlog::warn("eval: excluded {}", reasons[i]);
      out.excluded.push_back(reasons[i]);
    }
  }
  return out;
}

ImprovementReport Improvement(const ScoredCases& scored, double lambda1, double lambda2) {
  ImprovementReport r;
  r.lambda1 = lambda1;
  r.lambda2 = lambda2;
  r.case_count = scored.cases.size();
  r.excluded = scored.excluded.size();
  size_t comp = 0, sym = 0, vib = 0, fin = 0;
  std::vector<double> buf;
  for (const CaseScores& c : scored.cases) {
    auto improved = [&](auto metric) {
      buf.clear();
      for (const auto& crop : c.crops) buf.push_back(metric(crop));
      return MajorityHigher(buf, metric(c.original));
    };
    comp += improved([](const ComponentScores& s) { return s.comp; });
    sym += improved([](const ComponentScores& s) { return s.sym; });
    vib += improved([](const ComponentScores& s) { return s.vib; });
    fin += improved([&](const ComponentScores& s) { return Final(s, lambda1, lambda2); });
  }
  r.improved_final = fin;
  if (r.case_count > 0) {
    const double n = static_cast<double>(r.case_count);
    r.comp = 100.0 * static_cast<double>(comp) / n;
    r.sym = 100.0 * static_cast<double>(sym) / n;
    r.vib = 100.0 * static_cast<double>(vib) / n;
    r.final = 100.0 * static_cast<double>(fin) / n;
  }
  return r;
}

ImprovementReport CropImprovement(std::span<const CropCase> cases,
                                  const AnalysisConfig& analysis,
                                  const AestheticsSettings& settings, double lambda1,
                                  double lambda2, int parallelism) {
  return Improvement(ScoreCases(cases, analysis, settings, parallelism), lambda1, lambda2);
}

std::vector<ImprovementReport> LambdaSweep(const ScoredCases& scored, int steps) {
  if (steps < 1) Throw(ErrorCode::kInvalidInput, "lambda sweep: steps must be >= 1");
  std::vector<ImprovementReport> curve;
  for (int i = 0; i <= steps; ++i) {
    const double l1 = static_cast<double>(i) / steps;
    const double l2 = static_cast<double>(steps - i) / steps;
    curve.push_back(Improvement(scored, l1, l2));
  }
  return curve;
}

nlohmann::json ImprovementReport::ToJson() const {
  return {{"percent", {{"comp", comp}, {"sym", sym}, {"vib", vib}, {"final", final}}},
          {"case_count", case_count},
          {"excluded", excluded},
          {"improved_final", improved_final},
          {"lambda1", lambda1},
          {"lambda2", lambda2}};
}

std::string SweepCsv(std::span<const ImprovementReport> curve) {
  std::ostringstream os;
  os << "lambda1,lambda2,final_pct,comp_pct,sym_pct,vib_pct\n";
  char line[256];
  for (const auto& r : curve) {
    std::snprintf(line, sizeof(line), "%.2f,%.2f,%.4f,%.4f,%.4f,%.4f\n", r.lambda1, r.lambda2,
                  r.final, r.comp, r.sym, r.vib);
    os << line;
  }
  return os.str();
}

}  // namespace egohl::eval
