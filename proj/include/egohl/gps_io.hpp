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

#ifndef EGOHL_GPS_IO_HPP_
#define EGOHL_GPS_IO_HPP_

#include <filesystem>
#include <istream>
#include <span>
#include <string_view>
#include <vector>

#include "egohl/geo.hpp"
#include "json.hpp"

namespace egohl::geo {

// CSV with header `timestamp,lat,lon[,speed][,elevation]`; columns are
// matched by name, empty speed/elevation cells mean "absent".
std::vector<GpsPoint> ReadTrackCsv(std::istream& in);

// GPX 1.1 <trkpt lat lon><ele/><time/></trkpt>, all segments concatenated.
std::vector<GpsPoint> ReadTrackGpx(std::istream& in);

// Dispatches on extension (.gpx, otherwise CSV).
std::vector<GpsPoint> ReadTrack(const std::filesystem::path& path);

// ISO-8601 UTC timestamp ("2014-06-01T12:00:00.5Z", offsets allowed).
double ParseIso8601(std::string_view text);

nlohmann::json PoiToJson(const PoiRecord& poi);
PoiRecord PoiFromJson(const nlohmann::json& j);

// FeatureCollection with one Point feature per node anchor.
nlohmann::json NodesToGeoJson(std::span<const GeoNode> nodes);
nlohmann::json IntervalsToJson(std::span<const TimeInterval> intervals);

}  // namespace egohl::geo

#endif  // EGOHL_GPS_IO_HPP_
