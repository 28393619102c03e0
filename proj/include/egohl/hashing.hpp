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

#ifndef EGOHL_HASHING_HPP_
#define EGOHL_HASHING_HPP_

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

namespace egohl {

// Lower-case hex SHA-256 digests. Used for cache keys and provenance.
std::string Sha256Hex(std::string_view data);
std::string Sha256Hex(std::span<const unsigned char> data);
std::string Sha256File(const std::filesystem::path& path);

// Incremental digest for keys assembled from several parts.
class Hasher {
 public:
  Hasher();
  ~Hasher();
  Hasher(const Hasher&) = delete;
  Hasher& operator=(const Hasher&) = delete;

  // Each part is length-prefixed so ("ab","c") and ("a","bc") differ.
  Hasher& Add(std::string_view part);
  std::string Finish();

 private:
  void* ctx_;
};

}  // namespace egohl

#endif  // EGOHL_HASHING_HPP_
