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

#ifndef EGOHL_GEO_HPP_
#define EGOHL_GEO_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace egohl::geo {

// Mean Earth radius (IUGG).
inline constexpr double kEarthRadiusKm = 6371.0088;

struct GpsPoint {
  double lat = 0.0;        // degrees, [-90, 90]
  double lon = 0.0;        // degrees, [-180, 180]
  double timestamp = 0.0;  // seconds since epoch
  std::optional<double> speed;      // m/s
  std::optional<double> elevation;  // m
};

struct PoiRecord {
  std::string name;
  long long review_count = 0;
  double rating = 0.0;  // [0, 5]
  GpsPoint location;
};

struct TimeInterval {
  double start = 0.0;
  double end = 0.0;

  friend bool operator==(const TimeInterval&, const TimeInterval&) = default;
};

struct GeoNode {
  GpsPoint anchor;
  std::vector<GpsPoint> members;
  TimeInterval time_span;
  // Unset until POIs were fetched and scored; nodes whose lookup failed stay
  // unset and are treated as important by ImportanceIntervals.
  std::optional<double> score;
  std::vector<PoiRecord> pois;
};

enum class ThresholdMode { kAbsolute, kPercentile };

struct GeoConfig {
  double d_max_km = 10.0;
  double d_min_km = 0.5;
  // Speed is divided by this (m/s) before scaling d_max, so a walker gets a
  // radius of roughly d_max + d_min.
  double speed_reference_ms = 1.4;
  double node_score_threshold = 0.0;
  ThresholdMode threshold_mode = ThresholdMode::kAbsolute;
  // Frames between two passing nodes separated by less than this many
  // seconds are kept; 0 merges only touching spans.
  double interval_merge_gap_s = 1.0;

  void Validate() const;
};

void ValidatePoint(const GpsPoint& p);
void ValidatePoi(const PoiRecord& poi);

// Great-circle distance on the mean-radius sphere.
double HaversineKm(const GpsPoint& a, const GpsPoint& b);

// Fills missing speeds: distance / dt from the previous point, carrying the
// previous speed across dt == 0. The first point takes the speed of the first
// segment. Throws on unsorted timestamps or out-of-range coordinates.
std::vector<GpsPoint> WithDerivedSpeeds(std::vector<GpsPoint> track);

// Radius in km beyond which point `p` opens a new node.
double BreakRadiusKm(const GpsPoint& p, const GeoConfig& cfg);

// Greedy speed-scaled clustering: a point starts a new node when its
// distance to the current node's anchor exceeds BreakRadiusKm(point).
std::vector<GeoNode> AggregateNodes(std::span<const GpsPoint> track,
                                    const GeoConfig& cfg);

// Mean of review_count * rating over the node's POIs; 0 for no POIs.
double ScoreNode(const GeoNode& node);

// Threshold in score units. Percentile mode reads `value` in [0, 100] over
// the known node scores.
double ResolveThreshold(std::span<const GeoNode> nodes, double value,
                        ThresholdMode mode);

// Sorted, disjoint union of spans of nodes with score >= threshold (or an
// unknown score). Spans closer than `merge_gap_s` are merged.
std::vector<TimeInterval> ImportanceIntervals(std::span<const GeoNode> nodes,
                                              double threshold,
                                              double merge_gap_s = 0.0);

}  // namespace egohl::geo

#endif  // EGOHL_GEO_HPP_
