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

#ifndef EGOHL_POI_HPP_
#define EGOHL_POI_HPP_

#include <filesystem>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "egohl/geo.hpp"

namespace egohl::geo {

struct PoiQuery {
  double lat = 0.0;
  double lon = 0.0;
  int radius_m = 500;
  std::string category;  // provider-specific filter, empty for none
};

// Source of nearby points of interest. N_score magnitudes depend on the
// provider's review counts, so thresholds are not portable across providers.
class PoiClient {
 public:
  virtual ~PoiClient() = default;
  // Throws Error(kLookup) on any transport or protocol failure.
  virtual std::vector<PoiRecord> Search(const PoiQuery& query) = 0;
};

// Business-search HTTP client. Speaks the Yelp Fusion v3 response shape:
// {"businesses":[{"name","review_count","rating","coordinates":{...}}]}.
class HttpPoiClient : public PoiClient {
 public:
  struct Options {
    std::string base_url = "https://api.yelp.com";
    std::string path = "/v3/businesses/search";
    std::string api_key;  // sent as a Bearer token when non-empty
    int limit = 50;
    int timeout_s = 10;
  };

  explicit HttpPoiClient(Options options);
  std::vector<PoiRecord> Search(const PoiQuery& query) override;

 private:
  Options options_;
};

// One JSON document per rounded (lat, lon, radius, category) key. Reads are
// lock-free; writes are serialized and atomic (temp file + rename).
class PoiCache {
 public:
  explicit PoiCache(std::filesystem::path dir);

  static PoiQuery RoundedKey(const PoiQuery& query);
  std::filesystem::path PathFor(const PoiQuery& query) const;

  std::optional<std::vector<PoiRecord>> Load(const PoiQuery& query) const;
  void Store(const PoiQuery& query, std::span<const PoiRecord> pois);

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::mutex write_mu_;
};

struct PoiSearchParams {
  int radius_m = 500;
  std::string category;
};

// Cache first, then the client (if any). A miss with no client, or a client
// failure, throws Error(kLookup).
std::vector<PoiRecord> FetchPois(const GeoNode& node, PoiClient* client,
                                 PoiCache& cache, const PoiSearchParams& params);

struct NodeScoringSummary {
  size_t scored = 0;
  size_t lookup_failures = 0;
};

// Fetches POIs and sets `score` for every node. Nodes whose lookup fails
// keep an unset score.
NodeScoringSummary ScoreNodes(std::span<GeoNode> nodes, PoiClient* client,
                              PoiCache& cache, const PoiSearchParams& params,
                              int parallelism);

}  // namespace egohl::geo

#endif  // EGOHL_POI_HPP_
