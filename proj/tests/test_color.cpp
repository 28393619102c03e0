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

#include <cmath>
#include <fstream>
#include <limits>

#include "doctest.h"
#include "egohl/color.hpp"
#include "egohl/error.hpp"
#include "fixtures.hpp"

using namespace egohl;

namespace {

struct LabCase {
  uint8_t r, g, b;
  double L, a, bb;
};

// Reference values from skimage.color.rgb2lab (D65, 2 degree observer).
const LabCase kLabCases[] = {
    {0, 0, 0, 0.0, 0.0, 0.0},
    {255, 255, 255, 100.0, -0.0024549378620508655, 0.004653421154054982},
    {255, 0, 0, 53.2405879437449, 80.0923082256922, 67.2027510444287},
    {0, 255, 0, 87.73509948831895, -86.18302974439501, 83.17970317538452},
    {0, 0, 255, 32.29567256501351, 79.18559091176556, -107.85730020669489},
    {128, 128, 128, 53.58501345216902, -0.0014726455530578164, 0.0027914514965754478},
    {12, 200, 77, 70.81574459957646, -66.54354423065129, 48.873178449783275},
    {250, 128, 114, 67.26400711684238, 45.22553668401586, 29.096488828299762},
};

size_t BruteNearest(const ColorBinTable& t, const Lab& lab) {
  size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < kColorBinCount; ++i) {
    const auto& r = t.bins()[i].representative;
    const double d = std::sqrt((r.L - lab.L) * (r.L - lab.L) + (r.a - lab.a) * (r.a - lab.a) +
                               (r.b - lab.b) * (r.b - lab.b));
    if (d < best_d) {
      best_d = d;
      best = i;
    }
  }
  return best;
}

}  // namespace

TEST_SUITE("color") {

TEST_CASE("sRGB to LAB matches reference values") {
  for (const auto& c : kLabCases) {
    CAPTURE(int(c.r));
    CAPTURE(int(c.g));
    CAPTURE(int(c.b));
    const Lab lab = SrgbToLab(c.r, c.g, c.b);
    CHECK(lab.L == doctest::Approx(c.L).epsilon(1e-6));
    CHECK(std::abs(lab.a - c.a) < 1e-4);
    CHECK(std::abs(lab.b - c.bb) < 1e-4);
  }
}

TEST_CASE("raster conversion agrees with per-pixel conversion") {
  fixtures::Rng rng(11);
  const cv::Mat img = fixtures::Noise(13, 7, rng);
  const auto labs = RasterToLab(img);
  REQUIRE(labs.size() == 13u * 7u);
  for (int y = 0; y < img.rows; ++y) {
    for (int x = 0; x < img.cols; ++x) {
      const auto px = img.at<cv::Vec3b>(y, x);
      const Lab ref = SrgbToLab(px[0], px[1], px[2]);
      const Lab& got = labs[static_cast<size_t>(y) * img.cols + x];
      CHECK(got.L == ref.L);
      CHECK(got.a == ref.a);
      CHECK(got.b == ref.b);
    }
  }
}

TEST_CASE("distance is a metric on random samples") {
  fixtures::Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    const Lab x{rng.Uniform(0, 100), rng.Uniform(-100, 100), rng.Uniform(-100, 100)};
    const Lab y{rng.Uniform(0, 100), rng.Uniform(-100, 100), rng.Uniform(-100, 100)};
    const Lab z{rng.Uniform(0, 100), rng.Uniform(-100, 100), rng.Uniform(-100, 100)};
    CHECK(LabDistance(x, x) == 0.0);
    CHECK(LabDistance(x, y) == LabDistance(y, x));
    CHECK(LabDistance(x, z) <= LabDistance(x, y) + LabDistance(y, z) + 1e-9);
  }
}

TEST_CASE("assignment is the nearest representative") {
  const auto table = ColorBinTable::Default();
  fixtures::Rng rng(21);
  for (int i = 0; i < 1000; ++i) {
    const Lab lab{rng.Uniform(0, 100), rng.Uniform(-110, 110), rng.Uniform(-110, 110)};
    const auto a = table.Assign(lab);
    CHECK(a.index == BruteNearest(table, lab));
    CHECK(a.weight == table.bins()[a.index].weight);
    CHECK(a.distance == doctest::Approx(LabDistance(lab, table.bins()[a.index].representative)));
  }
  for (int i = 0; i < 300; ++i) {
    const auto lab = SrgbToLab(static_cast<uint8_t>(rng.Int(0, 255)),
                               static_cast<uint8_t>(rng.Int(0, 255)),
                               static_cast<uint8_t>(rng.Int(0, 255)));
    CHECK(table.Assign(lab).index == BruteNearest(table, lab));
  }
}

TEST_CASE("representatives map to their own bin") {
  const auto table = ColorBinTable::Default();
  for (size_t i = 0; i < kColorBinCount; ++i) {
    CHECK(table.Assign(table.bins()[i].representative).index == i);
  }
}

TEST_CASE("anchor colours land in the expected bins") {
  const auto table = ColorBinTable::Default();
  auto name_of = [&](uint8_t r, uint8_t g, uint8_t b) {
    return table.bins()[table.Assign(SrgbToLab(r, g, b)).index].name;
  };
  CHECK(name_of(0, 0, 0) == "dark-neutral");
  CHECK(name_of(128, 128, 128) == "mid-gray");
  CHECK(name_of(255, 255, 255) == "light-neutral");
  CHECK(name_of(220, 40, 40) == "red");
  CHECK(name_of(30, 60, 220) == "blue");
}

TEST_CASE("weights stay in range and the table is complete") {
  const auto table = ColorBinTable::Default();
  REQUIRE(table.bins().size() == 12);
  for (const auto& b : table.bins()) {
    CHECK(b.weight >= 0.0);
    CHECK(b.weight <= 1.0);
    CHECK_FALSE(b.name.empty());
  }
}

TEST_CASE("default table equals the shipped asset") {
  const auto shipped = ColorBinTable::Load(std::filesystem::path(EGOHL_ASSET_DIR) / "colorbins.json");
  const auto def = ColorBinTable::Default();
  for (size_t i = 0; i < kColorBinCount; ++i) {
    CHECK(shipped.bins()[i].name == def.bins()[i].name);
    CHECK(shipped.bins()[i].weight == def.bins()[i].weight);
    CHECK(shipped.bins()[i].representative.L == def.bins()[i].representative.L);
  }
  const auto round = ColorBinTable::FromJson(def.ToJson());
  CHECK(round.ToJson() == def.ToJson());
}

TEST_CASE("malformed tables are rejected") {
  auto j = ColorBinTable::Default().ToJson();
  auto short_j = j;
  short_j["bins"].erase(short_j["bins"].begin());
  CHECK_THROWS_AS(ColorBinTable::FromJson(short_j), Error);
  auto heavy = j;
  heavy["bins"][0]["weight"] = 1.5;
  CHECK_THROWS_AS(ColorBinTable::FromJson(heavy), Error);
  CHECK_THROWS_AS(ColorBinTable::Load("/nonexistent/colorbins.json"), Error);
  auto table = ColorBinTable::Default();
  CHECK_THROWS_AS(table.set_weight(12, 0.5), Error);
  CHECK_THROWS_AS(table.set_weight(0, -0.1), Error);
  table.set_weight(0, 0.25);
  CHECK(table.bins()[0].weight == 0.25);
}

}  // TEST_SUITE
