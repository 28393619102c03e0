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

#include <atomic>
#include <fstream>
#include <thread>

#include "doctest.h"
#include "egohl/error.hpp"
#include "egohl/poi.hpp"
#include "fixtures.hpp"
#include "httplib.h"

using namespace egohl;
using namespace egohl::geo;

namespace {

class CountingClient : public PoiClient {
 public:
  explicit CountingClient(std::vector<PoiRecord> result, bool fail = false)
      : result_(std::move(result)), fail_(fail) {}
  std::vector<PoiRecord> Search(const PoiQuery&) override {
    ++calls;
    if (fail_) Throw(ErrorCode::kLookup, "offline");
    return result_;
  }
  std::atomic<int> calls{0};

 private:
  std::vector<PoiRecord> result_;
  bool fail_;
};

GeoNode NodeAt(double lat, double lon) {
  GeoNode n;
  n.anchor.lat = lat;
  n.anchor.lon = lon;
  n.members = {n.anchor};
  return n;
}

// Local stand-in for the business-search endpoint.
class FakeService {
 public:
  FakeService() {
    server_.Get("/v3/businesses/search", [this](const httplib::Request& req,
                                                 httplib::Response& res) {
      ++hits;
      last_auth = req.get_header_value("Authorization");
      last_radius = req.get_param_value("radius");
      last_lat = req.get_param_value("latitude");
      if (status != 200) {
        res.status = status;
        return;
      }
      res.set_content(body, "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeService() {
    server_.stop();
    thread_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_); }

  std::atomic<int> hits{0};
  int status = 200;
  std::string body;
  std::string last_auth, last_radius, last_lat;

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

}  // namespace

TEST_SUITE("poi") {

TEST_CASE("cache key rounds to four decimals") {
  const PoiQuery a{46.123449, 7.000001, 500, ""};
  const PoiQuery b{46.123451, 6.999999, 500, ""};
  CHECK(PoiCache::RoundedKey(a).lat == doctest::Approx(46.1234));
  PoiCache cache("/tmp/x");
  CHECK(cache.PathFor(a).filename() == "poi_46.1234_7.0000_r500.json");
  CHECK(cache.PathFor(b).filename() == "poi_46.1235_7.0000_r500.json");
  const PoiQuery c{46.1, 7.2, 250, "food,bars"};
  CHECK(cache.PathFor(c).filename().string().rfind("poi_46.1000_7.2000_r250_", 0) == 0);
}

TEST_CASE("hand-written cache file with three POIs") {
  fixtures::TempDir dir("poi_fixture");
  std::ofstream(dir.path() / "poi_46.5000_7.2500_r500.json") << R"({
    "key": {"lat": 46.5, "lon": 7.25, "radius_m": 500, "category": ""},
    "radius_m": 500, "fetched_at": 1.0,
    "pois": [
      {"name": "Alpha", "review_count": 120, "rating": 4.5, "location": {"lat": 46.5001, "lon": 7.2502}},
      {"name": "Beta", "review_count": 8, "rating": 3.0, "location": {"lat": 46.4999, "lon": 7.2499}},
      {"name": "Gamma", "review_count": 0, "rating": 0.0, "location": {"lat": 46.5, "lon": 7.25}}
    ]})";
  PoiCache cache(dir.path());
  const auto pois = cache.Load({46.50004, 7.24996, 500, ""});
  REQUIRE(pois.has_value());
  REQUIRE(pois->size() == 3);
  CHECK((*pois)[0].name == "Alpha");
  CHECK((*pois)[0].review_count == 120);
  CHECK((*pois)[0].rating == 4.5);
  CHECK((*pois)[1].location.lat == 46.4999);
  CHECK((*pois)[2].review_count == 0);
  GeoNode n = NodeAt(46.5, 7.25);
  n.pois = *pois;
  CHECK(ScoreNode(n) == (120 * 4.5 + 8 * 3.0 + 0.0) / 3.0);
}

TEST_CASE("cache hit needs no network call and returns identical records") {
  fixtures::TempDir dir("poi_hit");
  fixtures::Rng rng(6);
  const auto pois = fixtures::MakePois(5, rng);
  CountingClient client(pois);
  PoiCache cache(dir.path());
  const GeoNode node = NodeAt(10.0, 20.0);
  const auto first = FetchPois(node, &client, cache, {});
  CHECK(client.calls == 1);
  const auto second = FetchPois(node, &client, cache, {});
  CHECK(client.calls == 1);
  const auto offline = FetchPois(node, nullptr, cache, {});
  REQUIRE(second.size() == first.size());
  for (size_t i = 0; i < first.size(); ++i) {
    CHECK(second[i].name == first[i].name);
    CHECK(second[i].review_count == first[i].review_count);
    CHECK(second[i].rating == first[i].rating);
    CHECK(offline[i].location.lon == first[i].location.lon);
  }
}

TEST_CASE("miss without a client is a lookup error") {
  fixtures::TempDir dir("poi_miss");
  PoiCache cache(dir.path());
  try {
    FetchPois(NodeAt(1, 1), nullptr, cache, {});
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kLookup);
  }
}

TEST_CASE("failed lookups leave the score unknown") {
  fixtures::TempDir dir("poi_fail");
  PoiCache cache(dir.path());
  const std::vector<PoiRecord> none;
  cache.Store({1.0, 1.0, 500, ""}, none);
  std::vector<GeoNode> nodes = {NodeAt(1.0, 1.0), NodeAt(2.0, 2.0), NodeAt(3.0, 3.0)};
  for (size_t i = 0; i < nodes.size(); ++i) nodes[i].time_span = {i * 100.0, i * 100.0 + 50.0};
  CountingClient failing({}, true);
  const auto summary = ScoreNodes(nodes, &failing, cache, {}, 2);
  CHECK(summary.scored == 1);
  CHECK(summary.lookup_failures == 2);
  CHECK(nodes[0].score == 0.0);
  CHECK_FALSE(nodes[1].score.has_value());
  CHECK_FALSE(nodes[2].score.has_value());
  const auto iv = ImportanceIntervals(nodes, 1.0);
  REQUIRE(iv.size() == 2);
  CHECK(iv[0] == TimeInterval{100.0, 150.0});
  CHECK(iv[1] == TimeInterval{200.0, 250.0});
}

TEST_CASE("scoring is identical across worker counts") {
  fixtures::TempDir dir("poi_par");
  PoiCache cache(dir.path());
  fixtures::Rng rng(8);
  std::vector<GeoNode> a, b;
  for (int i = 0; i < 30; ++i) {
    const GeoNode n = NodeAt(rng.Uniform(-50, 50), rng.Uniform(-50, 50));
    cache.Store({n.anchor.lat, n.anchor.lon, 500, ""}, fixtures::MakePois(rng.Int(0, 6), rng));
    a.push_back(n);
  }
  b = a;
  ScoreNodes(a, nullptr, cache, {}, 1);
  ScoreNodes(b, nullptr, cache, {}, 8);
  for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].score == b[i].score);
}

TEST_CASE("http client speaks the business-search response shape") {
  FakeService svc;
  svc.body = R"({"businesses":[
    {"name":"Cafe","review_count":40,"rating":4.0,"coordinates":{"latitude":46.1,"longitude":7.1}},
    {"name":"Museum","review_count":300,"rating":4.5,"coordinates":{"latitude":46.2,"longitude":7.2}}],
    "total":2})";
  HttpPoiClient::Options o;
  o.base_url = svc.url();
  o.api_key = "secret";
  o.timeout_s = 5;
  HttpPoiClient client(o);
  const auto pois = client.Search({46.15, 7.15, 750, ""});
  REQUIRE(pois.size() == 2);
  CHECK(pois[1].name == "Museum");
  CHECK(pois[1].review_count == 300);
  CHECK(pois[1].rating == 4.5);
  CHECK(pois[0].location.lat == 46.1);
  CHECK(svc.last_auth == "Bearer secret");
  CHECK(svc.last_radius == "750");

  fixtures::TempDir dir("poi_http");
  PoiCache cache(dir.path());
  const GeoNode node = NodeAt(46.15, 7.15);
  FetchPois(node, &client, cache, {750, ""});
  const int hits = svc.hits;
  FetchPois(node, &client, cache, {750, ""});
  CHECK(svc.hits == hits);
}

TEST_CASE("http failures map to lookup errors") {
  FakeService svc;
  HttpPoiClient::Options o;
  o.base_url = svc.url();
  o.timeout_s = 5;
  HttpPoiClient client(o);
  svc.status = 500;
  CHECK_THROWS_AS(client.Search({1, 1, 500, ""}), Error);
  svc.status = 200;
  svc.body = "not json";
  try {
    client.Search({1, 1, 500, ""});
    FAIL("expected a throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kLookup);
  }
  HttpPoiClient::Options closed;
  closed.base_url = "http://127.0.0.1:1";
  closed.timeout_s = 1;
  HttpPoiClient dead(closed);
  CHECK_THROWS_AS(dead.Search({1, 1, 500, ""}), Error);
}

}  // TEST_SUITE
