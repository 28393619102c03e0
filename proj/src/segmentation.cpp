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

#include "egohl/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <queue>
#include <sstream>
#include <unordered_map>

#include <opencv2/imgcodecs.hpp>

#include "egohl/error.hpp"

namespace egohl {
namespace {

struct Edge {
  float weight;
  uint32_t a;
  uint32_t b;
};

class DisjointSets {
 public:
  explicit DisjointSets(size_t n) : parent_(n), size_(n, 1), internal_(n, 0.0f) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }

  uint32_t Find(uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Lower root index survives so results do not depend on call order.
  uint32_t Join(uint32_t a, uint32_t b, float weight) {
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    internal_[a] = std::max({internal_[a], internal_[b], weight});
    return a;
  }

  size_t Size(uint32_t root) const { return size_[root]; }
  float Internal(uint32_t root) const { return internal_[root]; }

 private:
  std::vector<uint32_t> parent_;
  std::vector<size_t> size_;
  std::vector<float> internal_;
};

struct Region {
  double sum_l = 0.0;
  double sum_a = 0.0;
  double sum_b = 0.0;
  size_t size = 0;
  uint32_t version = 0;
  bool alive = true;

  Lab Mean() const {
    const double n = static_cast<double>(size);
    return {sum_l / n, sum_a / n, sum_b / n};
  }
};

struct Candidate {
  double dist;
  uint32_t a;
  uint32_t b;
  uint32_t va;
  uint32_t vb;

  // Min-heap on (dist, a, b).
  bool operator>(const Candidate& o) const {
    if (dist != o.dist) return dist > o.dist;
    if (a != o.a) return a > o.a;
    return b > o.b;
  }
};

}  // namespace

void SegmentationConfig::Validate() const {
  if (!(graph_k >= 0.0) || !(min_segment_fraction >= 0.0 && min_segment_fraction < 1.0) ||
      !(coarseness >= 0.0) || simplicity_plateau < 1) {
    Throw(ErrorCode::kInvalidInput, "segmentation: invalid configuration");
  }
}

std::string SegmentationConfig::Fingerprint() const {
  std::ostringstream os;
  os.precision(17);
  os << "seg/k" << graph_k << "/min" << min_segment_fraction << "/c" << coarseness
     << "/p" << simplicity_plateau;
  return os.str();
}

SegmentMap Segment(const cv::Mat& rgb, const SegmentationConfig& cfg) {
  CV_Assert(rgb.type() == CV_8UC3);
  cfg.Validate();
  const int w = rgb.cols;
  const int h = rgb.rows;
  const size_t n = static_cast<size_t>(w) * h;
  const std::vector<Lab> lab = RasterToLab(rgb);

  std::vector<Edge> edges;
  edges.reserve(2 * n);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const uint32_t i = static_cast<uint32_t>(y * w + x);
      if (x + 1 < w) {
        edges.push_back({static_cast<float>(LabDistance(lab[i], lab[i + 1])), i, i + 1});
      }
      if (y + 1 < h) {
        const uint32_t j = i + static_cast<uint32_t>(w);
        edges.push_back({static_cast<float>(LabDistance(lab[i], lab[j])), i, j});
      }
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& l, const Edge& r) {
    if (l.weight != r.weight) return l.weight < r.weight;
    if (l.a != r.a) return l.a < r.a;
    return l.b < r.b;
  });

  // Graph-based grouping: join when the edge is no heavier than either
  // side's internal difference plus k / |C|.
  DisjointSets sets(n);
  const float k = static_cast<float>(cfg.graph_k);
  for (const Edge& e : edges) {
    uint32_t ra = sets.Find(e.a);
    uint32_t rb = sets.Find(e.b);
    if (ra == rb) continue;
    const float ta = sets.Internal(ra) + k / static_cast<float>(sets.Size(ra));
    const float tb = sets.Internal(rb) + k / static_cast<float>(sets.Size(rb));
    if (e.weight <= std::min(ta, tb)) sets.Join(ra, rb, e.weight);
  }
  const size_t min_size =
      static_cast<size_t>(std::ceil(cfg.min_segment_fraction * static_cast<double>(n)));
  for (const Edge& e : edges) {
    uint32_t ra = sets.Find(e.a);
    uint32_t rb = sets.Find(e.b);
    if (ra == rb) continue;
    if (sets.Size(ra) < min_size || sets.Size(rb) < min_size) sets.Join(ra, rb, e.weight);
  }

  // Region adjacency graph over the surviving components.
  std::vector<uint32_t> region_of(n);
  std::unordered_map<uint32_t, uint32_t> root_to_region;
  std::vector<Region> regions;
  for (size_t i = 0; i < n; ++i) {
    const uint32_t root = sets.Find(static_cast<uint32_t>(i));
    auto [it, inserted] = root_to_region.emplace(root, static_cast<uint32_t>(regions.size()));
    if (inserted) regions.emplace_back();
    Region& r = regions[it->second];
    r.sum_l += lab[i].L;
    r.sum_a += lab[i].a;
    r.sum_b += lab[i].b;
    ++r.size;
    region_of[i] = it->second;
  }
  std::vector<std::vector<uint32_t>> adjacency(regions.size());
  for (const Edge& e : edges) {
    const uint32_t ra = region_of[e.a];
    const uint32_t rb = region_of[e.b];
    if (ra == rb) continue;
    adjacency[ra].push_back(rb);
    adjacency[rb].push_back(ra);
  }
  for (auto& adj : adjacency) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }

  std::priority_queue<Candidate, std::vector<Candidate>, std::greater<>> heap;
  auto push = [&](uint32_t a, uint32_t b) {
    if (a > b) std::swap(a, b);
    heap.push({LabDistance(regions[a].Mean(), regions[b].Mean()), a, b, regions[a].version,
               regions[b].version});
  };
  for (uint32_t a = 0; a < regions.size(); ++a) {
    for (uint32_t b : adjacency[a]) {
      if (a < b) push(a, b);
    }
  }
  std::vector<uint32_t> merged_into(regions.size());
  std::iota(merged_into.begin(), merged_into.end(), 0u);
  while (!heap.empty()) {
    const Candidate c = heap.top();
    heap.pop();
    Region& ra = regions[c.a];
    Region& rb = regions[c.b];
    if (!ra.alive || !rb.alive || ra.version != c.va || rb.version != c.vb) continue;
    if (c.dist > cfg.coarseness) break;
    ra.sum_l += rb.sum_l;
    ra.sum_a += rb.sum_a;
    ra.sum_b += rb.sum_b;
    ra.size += rb.size;
    ++ra.version;
    rb.alive = false;
    merged_into[c.b] = c.a;
    std::vector<uint32_t> combined;
    std::set_union(adjacency[c.a].begin(), adjacency[c.a].end(), adjacency[c.b].begin(),
                   adjacency[c.b].end(), std::back_inserter(combined));
    std::vector<uint32_t> live;
    for (uint32_t r : combined) {
      if (r != c.a && r != c.b && regions[r].alive) live.push_back(r);
    }
    adjacency[c.a] = std::move(live);
    adjacency[c.b].clear();
    for (uint32_t r : adjacency[c.a]) {
      auto& back = adjacency[r];
      back.erase(std::remove(back.begin(), back.end(), c.b), back.end());
      if (!std::binary_search(back.begin(), back.end(), c.a)) {
        back.insert(std::lower_bound(back.begin(), back.end(), c.a), c.a);
      }
      push(c.a, r);
    }
  }
  auto resolve = [&merged_into](uint32_t r) {
    while (merged_into[r] != r) r = merged_into[r];
    return r;
  };

  SegmentMap map;
  map.width = w;
  map.height = h;
  map.labels.resize(n);
  std::unordered_map<uint32_t, int> dense;
  for (size_t i = 0; i < n; ++i) {
    const uint32_t r = resolve(region_of[i]);
    auto [it, inserted] = dense.emplace(r, static_cast<int>(dense.size()));
    map.labels[i] = it->second;
  }
  map.segments = ComputeSegmentStats(lab, w, h, map.labels, dense.size());
  return map;
}

std::vector<SegmentStat> ComputeSegmentStats(const std::vector<Lab>& lab, int width,
                                             int height, const std::vector<int>& labels,
                                             size_t count) {
  std::vector<SegmentStat> stats(count);
  std::vector<double> sx(count, 0.0), sy(count, 0.0), sl(count, 0.0), sa(count, 0.0),
      sb(count, 0.0);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const size_t i = static_cast<size_t>(y) * width + x;
      const size_t l = static_cast<size_t>(labels[i]);
      ++stats[l].size;
      sx[l] += (x + 0.5) / width;
      sy[l] += (y + 0.5) / height;
      sl[l] += lab[i].L;
      sa[l] += lab[i].a;
      sb[l] += lab[i].b;
    }
  }
  for (size_t l = 0; l < count; ++l) {
    const double s = static_cast<double>(stats[l].size);
    stats[l].cx = sx[l] / s;
    stats[l].cy = sy[l] / s;
    stats[l].mean_lab = {sl[l] / s, sa[l] / s, sb[l] / s};
  }
  return stats;
}

double SimplicityWeight(size_t segment_count, int plateau) {
  if (segment_count < 1) Throw(ErrorCode::kInvalidInput, "simplicity: M must be >= 1");
  if (plateau < 1) Throw(ErrorCode::kInvalidInput, "simplicity: plateau must be >= 1");
  if (segment_count <= static_cast<size_t>(plateau)) return 1.0;
  return static_cast<double>(plateau) / static_cast<double>(segment_count);
}

void WriteLabelPng(const SegmentMap& map, const std::filesystem::path& path) {
  cv::Mat img(map.height, map.width, CV_16U);
  for (int y = 0; y < map.height; ++y) {
    auto* row = img.ptr<uint16_t>(y);
    for (int x = 0; x < map.width; ++x) {
      row[x] = static_cast<uint16_t>(
          std::min(map.labels[static_cast<size_t>(y) * map.width + x], 65535));
    }
  }
  if (!cv::imwrite(path.string(), img)) {
    Throw(ErrorCode::kIo, "cannot write label map " + path.string());
  }
}

}  // namespace egohl
