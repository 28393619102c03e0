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

#include "egohl/geo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "egohl/error.hpp"

namespace egohl::geo {
namespace {

double Radians(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace

void GeoConfig::Validate() const {
  if (!(d_max_km > 0.0)) Throw(ErrorCode::kInvalidInput, "geo: d_max must be > 0");
  if (!(d_min_km >= 0.0)) Throw(ErrorCode::kInvalidInput, "geo: d_min must be >= 0");
  if (!(speed_reference_ms > 0.0)) {
    Throw(ErrorCode::kInvalidInput, "geo: speed_reference must be > 0");
  }
  if (threshold_mode == ThresholdMode::kPercentile &&
      (node_score_threshold < 0.0 || node_score_threshold > 100.0)) {
    Throw(ErrorCode::kInvalidInput, "geo: percentile threshold outside [0, 100]");
  }
  if (!(interval_merge_gap_s >= 0.0)) {
    Throw(ErrorCode::kInvalidInput, "geo: interval_merge_gap must be >= 0");
  }
}

void ValidatePoint(const GpsPoint& p) {
  if (!std::isfinite(p.lat) || !std::isfinite(p.lon) || p.lat < -90.0 ||
      p.lat > 90.0 || p.lon < -180.0 || p.lon > 180.0) {
    std::ostringstream os;
    os << "geo: coordinate out of range (" << p.lat << ", " << p.lon << ")";
    Throw(ErrorCode::kInvalidInput, os.str());
  }
  if (p.speed && !(*p.speed >= 0.0)) {
    Throw(ErrorCode::kInvalidInput, "geo: negative speed");
  }
}

void ValidatePoi(const PoiRecord& poi) {
  if (poi.review_count < 0) {
    Throw(ErrorCode::kInvalidInput, "poi: negative review count for " + poi.name);
  }
  if (!(poi.rating >= 0.0 && poi.rating <= 5.0)) {
    Throw(ErrorCode::kInvalidInput, "poi: rating outside [0, 5] for " + poi.name);
  }
}

double HaversineKm(const GpsPoint& a, const GpsPoint& b) {
  ValidatePoint(a);
  ValidatePoint(b);
  if (a.lat == b.lat && a.lon == b.lon) return 0.0;
  const double dlat = Radians(b.lat - a.lat);
  const double dlon = Radians(b.lon - a.lon);
  const double s_lat = std::sin(dlat / 2.0);
  const double s_lon = std::sin(dlon / 2.0);
  double h = s_lat * s_lat +
             std::cos(Radians(a.lat)) * std::cos(Radians(b.lat)) * s_lon * s_lon;
  h = std::clamp(h, 0.0, 1.0);
  return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(h));
}

std::vector<GpsPoint> WithDerivedSpeeds(std::vector<GpsPoint> track) {
  for (size_t i = 0; i < track.size(); ++i) {
    ValidatePoint(track[i]);
    if (i > 0 && track[i].timestamp < track[i - 1].timestamp) {
      Throw(ErrorCode::kInvalidInput, "geo: track timestamps are not sorted");
    }
  }
  double carried = 0.0;
  for (size_t i = 1; i < track.size(); ++i) {
    if (track[i].speed) {
      carried = *track[i].speed;
      continue;
    }
    const double dt = track[i].timestamp - track[i - 1].timestamp;
    if (dt > 0.0) {
      carried = HaversineKm(track[i - 1], track[i]) * 1000.0 / dt;
    }
    track[i].speed = carried;
  }
  if (!track.empty() && !track[0].speed) {
    track[0].speed = track.size() > 1 ? *track[1].speed : 0.0;
  }
  return track;
}

double BreakRadiusKm(const GpsPoint& p, const GeoConfig& cfg) {
  const double speed = p.speed.value_or(0.0);
  return speed / cfg.speed_reference_ms * cfg.d_max_km + cfg.d_min_km;
}

std::vector<GeoNode> AggregateNodes(std::span<const GpsPoint> track,
                                    const GeoConfig& cfg) {
  cfg.Validate();
  if (track.empty()) Throw(ErrorCode::kEmptyInput, "geo: empty track");

  std::vector<GeoNode> nodes;
  auto open_node = [&nodes](const GpsPoint& p) {
    GeoNode node;
    node.anchor = p;
    node.members.push_back(p);
    node.time_span = {p.timestamp, p.timestamp};
    nodes.push_back(std::move(node));
  };

  ValidatePoint(track.front());
  open_node(track.front());
  for (size_t i = 1; i < track.size(); ++i) {
    const GpsPoint& p = track[i];
    if (p.timestamp < track[i - 1].timestamp) {
      Throw(ErrorCode::kInvalidInput, "geo: track timestamps are not sorted");
    }
    GeoNode& current = nodes.back();
    if (HaversineKm(current.anchor, p) > BreakRadiusKm(p, cfg)) {
      open_node(p);
    } else {
      current.members.push_back(p);
      current.time_span.end = p.timestamp;
    }
  }
  return nodes;
}

double ScoreNode(const GeoNode& node) {
  if (node.pois.empty()) return 0.0;
  double sum = 0.0;
  for (const PoiRecord& poi : node.pois) {
    ValidatePoi(poi);
    sum += static_cast<double>(poi.review_count) * poi.rating;
  }
  return sum / static_cast<double>(node.pois.size());
}

double ResolveThreshold(std::span<const GeoNode> nodes, double value,
                        ThresholdMode mode) {
  if (mode == ThresholdMode::kAbsolute) return value;
  if (value < 0.0 || value > 100.0) {
    Throw(ErrorCode::kInvalidInput, "geo: percentile outside [0, 100]");
  }
  std::vector<double> known;
  for (const GeoNode& n : nodes) {
    if (n.score) known.push_back(*n.score);
  }
  if (known.empty()) return 0.0;
  std::sort(known.begin(), known.end());
  // Linear interpolation between closest ranks.
  const double pos = value / 100.0 * static_cast<double>(known.size() - 1);
  const size_t lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = std::min(lo + 1, known.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return known[lo] + (known[hi] - known[lo]) * frac;
}

std::vector<TimeInterval> ImportanceIntervals(std::span<const GeoNode> nodes,
                                              double threshold,
                                              double merge_gap_s) {
  std::vector<TimeInterval> spans;
  for (const GeoNode& n : nodes) {
    if (!n.score || *n.score >= threshold) spans.push_back(n.time_span);
  }
  std::sort(spans.begin(), spans.end(),
            [](const TimeInterval& a, const TimeInterval& b) {
              return a.start < b.start || (a.start == b.start && a.end < b.end);
            });
  std::vector<TimeInterval> merged;
  for (const TimeInterval& s : spans) {
    if (!merged.empty() && s.start <= merged.back().end + merge_gap_s) {
      merged.back().end = std::max(merged.back().end, s.end);
    } else {
      merged.push_back(s);
    }
  }
  return merged;
}

}  // namespace egohl::geo
