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

#include "egohl/gps_io.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <cctype>
#include <charconv>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "egohl/error.hpp"

namespace egohl::geo {
namespace {

std::string Trim(std::string_view s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(Trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double ParseDouble(const std::string& s, const char* what, size_t line_no) {
  double v = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end) {
    Throw(ErrorCode::kInvalidInput, "gps csv line " + std::to_string(line_no) +
                                        ": bad " + what + " '" + s + "'");
  }
  return v;
}

}  // namespace

std::vector<GpsPoint> ReadTrackCsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) Throw(ErrorCode::kEmptyInput, "gps csv: no header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::map<std::string, size_t> column;
  const auto header = SplitCsv(line);
  for (size_t i = 0; i < header.size(); ++i) column[header[i]] = i;
  for (const char* required : {"timestamp", "lat", "lon"}) {
    if (!column.count(required)) {
      Throw(ErrorCode::kInvalidInput,
            std::string("gps csv: missing column '") + required + "'");
    }
  }
  auto optional_col = [&column](const char* name) -> std::optional<size_t> {
    auto it = column.find(name);
    if (it == column.end()) return std::nullopt;
    return it->second;
  };
  const auto speed_col = optional_col("speed");
  const auto ele_col = optional_col("elevation");

  std::vector<GpsPoint> track;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    const auto cells = SplitCsv(line);
    auto cell = [&](size_t idx) -> const std::string& {
      static const std::string kEmpty;
      return idx < cells.size() ? cells[idx] : kEmpty;
    };
    GpsPoint p;
    p.timestamp = ParseDouble(cell(column["timestamp"]), "timestamp", line_no);
    p.lat = ParseDouble(cell(column["lat"]), "lat", line_no);
    p.lon = ParseDouble(cell(column["lon"]), "lon", line_no);
    if (speed_col && !cell(*speed_col).empty()) {
      p.speed = ParseDouble(cell(*speed_col), "speed", line_no);
    }
    if (ele_col && !cell(*ele_col).empty()) {
      p.elevation = ParseDouble(cell(*ele_col), "elevation", line_no);
    }
    ValidatePoint(p);
    track.push_back(p);
  }
  return track;
}

double ParseIso8601(std::string_view text) {
  const std::string s = Trim(text);
  int year = 0, month = 0, day = 0, hour = 0, minute = 0;
  double second = 0.0;
  int consumed = 0;
  if (std::sscanf(s.c_str(), "%d-%d-%dT%d:%d:%lf%n", &year, &month, &day,
                  &hour, &minute, &second, &consumed) != 6) {
    Throw(ErrorCode::kInvalidInput, "bad ISO-8601 time '" + s + "'");
  }
  std::tm tm{};
  tm.tm_year = year - 1900;
  tm.tm_mon = month - 1;
  tm.tm_mday = day;
  tm.tm_hour = hour;
  tm.tm_min = minute;
  tm.tm_sec = 0;
  double t = static_cast<double>(timegm(&tm)) + second;

  std::string_view rest = std::string_view(s).substr(static_cast<size_t>(consumed));
  if (rest.empty() || rest == "Z") return t;
  int oh = 0, om = 0;
  char sign = rest[0];
  if ((sign == '+' || sign == '-') &&
      std::sscanf(std::string(rest.substr(1)).c_str(), "%d:%d", &oh, &om) >= 1) {
    const double offset = oh * 3600.0 + om * 60.0;
    return sign == '+' ? t - offset : t + offset;
  }
  Throw(ErrorCode::kInvalidInput, "bad ISO-8601 zone in '" + s + "'");
}

std::vector<GpsPoint> ReadTrackGpx(std::istream& in) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    Throw(ErrorCode::kInvalidInput, std::string("gpx: ") + e.what());
  }
  std::vector<GpsPoint> track;
  const auto gpx = tree.get_child_optional("gpx");
  if (!gpx) Throw(ErrorCode::kInvalidInput, "gpx: missing <gpx> root");
  for (const auto& [trk_name, trk] : *gpx) {
    if (trk_name != "trk") continue;
    for (const auto& [seg_name, seg] : trk) {
      if (seg_name != "trkseg") continue;
      for (const auto& [pt_name, node] : seg) {
        if (pt_name != "trkpt") continue;
        GpsPoint p;
        try {
          p.lat = node.get<double>("<xmlattr>.lat");
          p.lon = node.get<double>("<xmlattr>.lon");
        } catch (const pt::ptree_error& e) {
          Throw(ErrorCode::kInvalidInput, std::string("gpx: bad trkpt: ") + e.what());
        }
        const auto time = node.get_optional<std::string>("time");
        if (!time) Throw(ErrorCode::kInvalidInput, "gpx: trkpt without <time>");
        p.timestamp = ParseIso8601(*time);
        if (auto ele = node.get_optional<double>("ele")) p.elevation = *ele;
        if (auto speed = node.get_optional<double>("extensions.speed")) {
          p.speed = *speed;
        }
        ValidatePoint(p);
        track.push_back(p);
      }
    }
  }
  return track;
}

std::vector<GpsPoint> ReadTrack(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Throw(ErrorCode::kIo, "cannot open GPS track " + path.string());
  std::string ext = path.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return ext == ".gpx" ? ReadTrackGpx(in) : ReadTrackCsv(in);
}

nlohmann::json PoiToJson(const PoiRecord& poi) {
  return {{"name", poi.name},
          {"review_count", poi.review_count},
          {"rating", poi.rating},
          {"location", {{"lat", poi.location.lat}, {"lon", poi.location.lon}}}};
}

PoiRecord PoiFromJson(const nlohmann::json& j) {
  PoiRecord poi;
  poi.name = j.at("name").get<std::string>();
  poi.review_count = j.at("review_count").get<long long>();
  poi.rating = j.at("rating").get<double>();
  poi.location.lat = j.at("location").at("lat").get<double>();
  poi.location.lon = j.at("location").at("lon").get<double>();
  ValidatePoi(poi);
  ValidatePoint(poi.location);
  return poi;
}

nlohmann::json NodesToGeoJson(std::span<const GeoNode> nodes) {
  nlohmann::json features = nlohmann::json::array();
  for (size_t i = 0; i < nodes.size(); ++i) {
    const GeoNode& n = nodes[i];
    nlohmann::json props = {{"node", i},
                            {"start", n.time_span.start},
                            {"end", n.time_span.end},
                            {"members", n.members.size()},
                            {"poi_count", n.pois.size()}};
    props["score"] = n.score ? nlohmann::json(*n.score) : nlohmann::json(nullptr);
    features.push_back({{"type", "Feature"},
                        {"geometry",
                         {{"type", "Point"},
                          {"coordinates", {n.anchor.lon, n.anchor.lat}}}},
                        {"properties", std::move(props)}});
  }
  return {{"type", "FeatureCollection"}, {"features", std::move(features)}};
}

nlohmann::json IntervalsToJson(std::span<const TimeInterval> intervals) {
  nlohmann::json out = nlohmann::json::array();
  for (const TimeInterval& iv : intervals) out.push_back({iv.start, iv.end});
  return out;
}

}  // namespace egohl::geo
