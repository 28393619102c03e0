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

#include <algorithm>
#include <cmath>

#include <opencv2/core.hpp>

#include "doctest.h"
#include "egohl/aesthetics.hpp"
#include "egohl/error.hpp"
#include "fixtures.hpp"

using namespace egohl;

namespace {

size_t BinNamed(const ColorBinTable& t, const std::string& name) {
  for (size_t i = 0; i < kColorBinCount; ++i) {
    if (t.bins()[i].name == name) return i;
  }
  FAIL("no bin " << name);
  return 0;
}

SegmentMap OneSegment(double cx, double cy, const Lab& lab) {
  SegmentMap m;
  m.width = 300;
  m.height = 200;
  m.labels.assign(300 * 200, 0);
  m.segments.push_back({300 * 200, cx, cy, lab});
  return m;
}

SegmentMap RandomSegMap(fixtures::Rng& rng, int m) {
  SegmentMap s;
  s.width = 100;
  s.height = 100;
  for (int j = 0; j < m; ++j) {
    const auto size = static_cast<size_t>(rng.Int(1, 10000 / m));
    s.segments.push_back({size, rng.Uniform(0.01, 0.99), rng.Uniform(0.01, 0.99),
                          {rng.Uniform(0, 100), rng.Uniform(-80, 80), rng.Uniform(-80, 80)}});
  }
  return s;
}

// Table whose first two bins sit exactly on two sRGB colours.
ColorBinTable TwoColourTable(cv::Vec3b c0, double w0, cv::Vec3b c1, double w1) {
  auto j = ColorBinTable::Default().ToJson();
  const Lab l0 = SrgbToLab(c0[0], c0[1], c0[2]);
  const Lab l1 = SrgbToLab(c1[0], c1[1], c1[2]);
  j["bins"][0]["representative_lab"] = {l0.L, l0.a, l0.b};
  j["bins"][0]["weight"] = w0;
  j["bins"][1]["representative_lab"] = {l1.L, l1.a, l1.b};
  j["bins"][1]["weight"] = w1;
  return ColorBinTable::FromJson(j);
}

}  // namespace

TEST_SUITE("aesthetics") {

TEST_CASE("composition: one segment on a thirds point") {
  auto table = ColorBinTable::Default();
  const size_t skin = BinNamed(table, "skin");
  table.set_weight(skin, 0.5);
  const Lab lab = table.bins()[skin].representative;
  const auto r = CompositionScore(OneSegment(1.0 / 3.0, 1.0 / 3.0, lab), {}, table);
  CHECK(r.score == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(r.simplicity == 1.0);
  CHECK(r.best_point == 0);
}

TEST_CASE("composition: one segment at the centre") {
  auto table = ColorBinTable::Default();
  const size_t skin = BinNamed(table, "skin");
  table.set_weight(skin, 0.5);
  const auto r = CompositionScore(OneSegment(0.5, 0.5, table.bins()[skin].representative), {}, table);
  // 0.5 / hypot(1/6, 1/6)
  CHECK(r.score == doctest::Approx(2.1213203435596424).epsilon(1e-12));
  for (double p : r.per_point) CHECK(p == doctest::Approx(r.raw_score).epsilon(1e-12));
}

TEST_CASE("composition: reported score is the best of the four points") {
  fixtures::Rng rng(41);
  const auto table = ColorBinTable::Default();
  for (int i = 0; i < 200; ++i) {
    const auto m = RandomSegMap(rng, rng.Int(1, 40));
    const auto r = CompositionScore(m, {}, table);
    const double best = *std::max_element(r.per_point.begin(), r.per_point.end());
    CHECK(r.raw_score == best);
    CHECK(r.score == doctest::Approx(best * SimplicityWeight(m.M())).epsilon(1e-15));
    // Brute-force recomputation at every point.
    for (size_t p = 0; p < 4; ++p) {
      double sum = 0.0;
      for (const auto& s : m.segments) {
        const auto& pt = ThirdsGeometry::kPoints[p];
        const double d = std::max(0.05, std::hypot(s.cx - pt[0], s.cy - pt[1]));
        sum += static_cast<double>(s.size) / 10000.0 * table.Assign(s.mean_lab).weight / d;
      }
      CHECK(r.per_point[p] == doctest::Approx(sum / m.M()).epsilon(1e-12));
    }
  }
}

TEST_CASE("composition is invariant under horizontal mirroring") {
  fixtures::Rng rng(42);
  const auto table = ColorBinTable::Default();
  for (int i = 0; i < 200; ++i) {
    auto m = RandomSegMap(rng, rng.Int(1, 30));
    const auto before = CompositionScore(m, {}, table);
    for (auto& s : m.segments) s.cx = 1.0 - s.cx;
    const auto after = CompositionScore(m, {}, table);
    CHECK(after.score == doctest::Approx(before.score).epsilon(1e-12));
  }
}

TEST_CASE("composition prefers a subject on a thirds point") {
  const auto table = ColorBinTable::Default();
  const AestheticsSettings settings;
  const cv::Vec3b fg(255, 220, 40), bg(15, 15, 20);
  const auto centre = ScoreAesthetics(fixtures::Disc(300, 200, 0.5, 0.5, 0.06, fg, bg), settings);
  const auto thirds =
      ScoreAesthetics(fixtures::Disc(300, 200, 1.0 / 3.0, 2.0 / 3.0, 0.06, fg, bg), settings);
  CHECK(thirds.composition.score > centre.composition.score);
}

TEST_CASE("vibrancy: uniform colour on a representative scores its weight") {
  const auto table = TwoColourTable({200, 30, 30}, 0.9, {30, 30, 200}, 0.3);
  CHECK(VibrancyScore(fixtures::Solid(50, 40, {200, 30, 30}), table) == doctest::Approx(0.9));
  CHECK(VibrancyScore(fixtures::Solid(50, 40, {30, 30, 200}), table) == doctest::Approx(0.3));
}

TEST_CASE("vibrancy: two-colour half split") {
  const auto table = TwoColourTable({200, 30, 30}, 0.9, {30, 30, 200}, 0.3);
  cv::Mat img = fixtures::Solid(50, 40, {200, 30, 30});
  img(cv::Rect(25, 0, 25, 40)).setTo(cv::Scalar(30, 30, 200));
  CHECK(VibrancyScore(img, table) == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("vibrancy depends only on the colour histogram") {
  fixtures::Rng rng(43);
  const auto table = ColorBinTable::Default();
  for (int i = 0; i < 10; ++i) {
    const cv::Mat img = fixtures::Clutter(64, 48, rng);
    std::vector<cv::Vec3b> px(img.begin<cv::Vec3b>(), img.end<cv::Vec3b>());
    std::shuffle(px.begin(), px.end(), rng.engine());
    cv::Mat shuffled(48, 64, CV_8UC3);
    std::copy(px.begin(), px.end(), shuffled.begin<cv::Vec3b>());
    CHECK(VibrancyScore(shuffled, table) == VibrancyScore(img, table));
  }
}

TEST_CASE("vibrancy never drops when the dominant bin gets heavier") {
  fixtures::Rng rng(44);
  for (int i = 0; i < 20; ++i) {
    auto table = ColorBinTable::Default();
    const cv::Mat img = fixtures::Clutter(48, 48, rng);
    std::vector<size_t> count(kColorBinCount);
    for (auto it = img.begin<cv::Vec3b>(); it != img.end<cv::Vec3b>(); ++it) {
      ++count[table.Assign(SrgbToLab((*it)[0], (*it)[1], (*it)[2])).index];
    }
    const size_t dom = std::max_element(count.begin(), count.end()) - count.begin();
    const double before = VibrancyScore(img, table);
    table.set_weight(dom, std::min(1.0, table.bins()[dom].weight + rng.Uniform(0.0, 0.5)));
    CHECK(VibrancyScore(img, table) >= before);
  }
}

TEST_CASE("vibrant frames beat black frames") {
  const auto table = ColorBinTable::Default();
  cv::Mat vivid(60, 60, CV_8UC3);
  const cv::Vec3b hues[] = {{220, 40, 40}, {240, 140, 30}, {40, 60, 220}, {200, 40, 160}};
  for (int q = 0; q < 4; ++q) {
    vivid(cv::Rect((q % 2) * 30, (q / 2) * 30, 30, 30)).setTo(
        cv::Scalar(hues[q][0], hues[q][1], hues[q][2]));
  }
  CHECK(VibrancyScore(vivid, table) > VibrancyScore(fixtures::Solid(60, 60, {0, 0, 0}), table));
}

TEST_CASE("symmetry: featureless frames score zero") {
  const auto r = SymmetryScore(fixtures::Solid(200, 150, {128, 128, 128}), {});
  CHECK(r.score == 0.0);
  CHECK(r.pairs == 0);
}

TEST_CASE("symmetry: mirrored texture covers most of the frame") {
  for (uint64_t seed : {1, 2, 3}) {
    fixtures::Rng rng(seed);
    const auto r = SymmetryScore(fixtures::MirrorPattern(320, 240, rng), {});
    CAPTURE(seed);
    CHECK(r.score >= 0.8);
    CHECK(r.vertical >= r.horizontal);
    CHECK(r.score <= 1.0);
  }
}

TEST_CASE("symmetry: white noise stays low on average") {
  double sum = 0.0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    fixtures::Rng rng(seed);
    sum += SymmetryScore(fixtures::Noise(240, 180, rng), {}).score;
  }
  CHECK(sum / 20.0 <= 0.1);
}

TEST_CASE("symmetry: mirroring the input leaves the score unchanged") {
  for (uint64_t seed : {4, 5}) {
    fixtures::Rng rng(seed);
    const cv::Mat img = fixtures::MirrorPattern(320, 240, rng);
    cv::Mat flipped;
    cv::flip(img, flipped, 1);
    const double a = SymmetryScore(img, {}).score;
    const double b = SymmetryScore(flipped, {}).score;
    CHECK(std::abs(a - b) < 1e-6);
  }
  fixtures::Rng rng(6);
  const cv::Mat clutter = fixtures::Clutter(320, 240, rng);
  cv::Mat flipped;
  cv::flip(clutter, flipped, 1);
  CHECK(std::abs(SymmetryScore(clutter, {}).score - SymmetryScore(flipped, {}).score) < 1e-6);
}

TEST_CASE("symmetry config validation") {
  SymmetryConfig c;
  CHECK_NOTHROW(c.Validate());
  c.k = 1;
  CHECK_THROWS_AS(c.Validate(), Error);
  c = {};
  c.match_ratio = 1.0;
  CHECK_THROWS_AS(c.Validate(), Error);
}

TEST_CASE("combined scoring equals the individual scorers") {
  fixtures::Rng rng(45);
  const cv::Mat img = fixtures::Clutter(160, 120, rng);
  const AestheticsSettings s;
  const auto all = ScoreAesthetics(img, s);
  const auto seg = Segment(img, s.segmentation);
  CHECK(all.segment_count == seg.M());
  CHECK(all.composition.score == CompositionScore(seg, s.thirds, s.table).score);
  CHECK(all.vibrancy == VibrancyScore(img, s.table));
  CHECK(all.symmetry.score == SymmetryScore(img, s.symmetry).score);
}

}  // TEST_SUITE
