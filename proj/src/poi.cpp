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

#include "egohl/poi.hpp"

#include <spdlog/spdlog.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "egohl/error.hpp"
#include "egohl/gps_io.hpp"
#include "egohl/parallel.hpp"
#include "httplib.h"
#include "json.hpp"

namespace egohl::geo {
namespace {

double Round4(double v) { return std::round(v * 1e4) / 1e4; }

std::string SanitizeCategory(const std::string& category) {
  std::string out;
  for (char c : category) {
    out.push_back(std::isalnum(static_cast<unsigned char>(c)) ? c : '-');
  }
  return out;
}

}  // namespace

HttpPoiClient::HttpPoiClient(Options options) : options_(std::move(options)) {}

std::vector<PoiRecord> HttpPoiClient::Search(const PoiQuery& query) {
  httplib::Client client(options_.base_url);
  client.set_connection_timeout(options_.timeout_s, 0);
  client.set_read_timeout(options_.timeout_s, 0);
  httplib::Headers headers;
  if (!options_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + options_.api_key);
  }
  httplib::Params params{
      {"latitude", std::to_string(query.lat)},
      {"longitude", std::to_string(query.lon)},
      {"radius", std::to_string(query.radius_m)},
      {"limit", std::to_string(options_.limit)},
  };
  if (!query.category.empty()) params.emplace("categories", query.category);

  auto res = client.Get(options_.path, params, headers);
  if (!res) {
    Throw(ErrorCode::kLookup,
          "poi: request failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    Throw(ErrorCode::kLookup, "poi: HTTP status " + std::to_string(res->status));
  }
  std::vector<PoiRecord> out;
  try {
    const auto body = nlohmann::json::parse(res->body);
    for (const auto& b : body.at("businesses")) {
      PoiRecord poi;
      poi.name = b.value("name", "");
      poi.review_count = b.value("review_count", 0LL);
      poi.rating = b.value("rating", 0.0);
      if (b.contains("coordinates")) {
        poi.location.lat = b["coordinates"].value("latitude", query.lat);
        poi.location.lon = b["coordinates"].value("longitude", query.lon);
      } else {
        poi.location.lat = query.lat;
        poi.location.lon = query.lon;
      }
      ValidatePoi(poi);
      out.push_back(std::move(poi));
    }
  } catch (const nlohmann::json::exception& e) {
    Throw(ErrorCode::kLookup, std::string("poi: malformed response: ") + e.what());
  } catch (const Error& e) {
    Throw(ErrorCode::kLookup, e.what());
  }
  return out;
}

PoiCache::PoiCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

PoiQuery PoiCache::RoundedKey(const PoiQuery& query) {
  PoiQuery key = query;
  key.lat = Round4(query.lat);
  key.lon = Round4(query.lon);
  return key;
}

std::filesystem::path PoiCache::PathFor(const PoiQuery& query) const {
  const PoiQuery key = RoundedKey(query);
  char name[128];
  std::snprintf(name, sizeof(name), "poi_%.4f_%.4f_r%d", key.lat, key.lon,
                key.radius_m);
  std::string file = name;
  if (!key.category.empty()) file += "_" + SanitizeCategory(key.category);
  return dir_ / (file + ".json");
}

std::optional<std::vector<PoiRecord>> PoiCache::Load(const PoiQuery& query) const {
  const auto path = PathFor(query);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    const auto doc = nlohmann::json::parse(in);
    std::vector<PoiRecord> pois;
    for (const auto& p : doc.at("pois")) pois.push_back(PoiFromJson(p));
    return pois;
  } catch (const std::exception& e) {
    spdlog::warn("poi cache: ignoring unreadable entry {}: {}", path.string(),
                 e.what());
    return std::nullopt;
  }
}

void PoiCache::Store(const PoiQuery& query, std::span<const PoiRecord> pois) {
  const PoiQuery key = RoundedKey(query);
  nlohmann::json doc;
  doc["key"] = {{"lat", key.lat},
                {"lon", key.lon},
                {"radius_m", key.radius_m},
                {"category", key.category}};
  doc["radius_m"] = key.radius_m;
  doc["fetched_at"] = std::chrono::duration<double>(
                          std::chrono::system_clock::now().time_since_epoch())
                          .count();
  doc["pois"] = nlohmann::json::array();
  for (const PoiRecord& p : pois) doc["pois"].push_back(PoiToJson(p));

  std::lock_guard<std::mutex> lock(write_mu_);
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  const auto path = PathFor(query);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) Throw(ErrorCode::kIo, "poi cache: cannot write " + tmp.string());
    out << doc.dump(2) << "\n";
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) Throw(ErrorCode::kIo, "poi cache: rename failed: " + ec.message());
}

std::vector<PoiRecord> FetchPois(const GeoNode& node, PoiClient* client,
                                 PoiCache& cache, const PoiSearchParams& params) {
  PoiQuery query{node.anchor.lat, node.anchor.lon, params.radius_m, params.category};
  if (auto hit = cache.Load(query)) return *hit;
  if (client == nullptr) {
    Throw(ErrorCode::kLookup, "poi: no cache entry and no client for (" +
                                  std::to_string(query.lat) + ", " +
                                  std::to_string(query.lon) + ")");
  }
  auto pois = client->Search(PoiCache::RoundedKey(query));
  cache.Store(query, pois);
  return pois;
}

NodeScoringSummary ScoreNodes(std::span<GeoNode> nodes, PoiClient* client,
                              PoiCache& cache, const PoiSearchParams& params,
                              int parallelism) {
  std::vector<char> failed(nodes.size(), 0);
  ParallelFor(nodes.size(), parallelism, [&](size_t i) {
    try {
      nodes[i].pois = FetchPois(nodes[i], client, cache, params);
      nodes[i].score = ScoreNode(nodes[i]);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kLookup) throw;
      nodes[i].score.reset();
      failed[i] = 1;
    }
  });
  NodeScoringSummary summary;
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (failed[i]) {
      ++summary.lookup_failures;
    } else {
      ++summary.scored;
    }
  }
  if (summary.lookup_failures > 0) {
    spdlog::warn("geo: {} of {} node lookups failed; those nodes are kept",
                 summary.lookup_failures, nodes.size());
  }
  return summary;
}

}  // namespace egohl::geo
