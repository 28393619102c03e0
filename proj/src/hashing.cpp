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

#include "egohl/hashing.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdint>
#include <fstream>

#include "egohl/error.hpp"

namespace egohl {
namespace {

std::string ToHex(const unsigned char* digest, unsigned int len) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kDigits[digest[i] >> 4]);
    out.push_back(kDigits[digest[i] & 0xf]);
  }
  return out;
}

EVP_MD_CTX* NewContext() {
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
    Throw(ErrorCode::kPipeline, "sha256: digest initialisation failed");
  }
  return ctx;
}

std::string FinishContext(EVP_MD_CTX* ctx) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, digest.data(), &len);
  return ToHex(digest.data(), len);
}

}  // namespace

std::string Sha256Hex(std::string_view data) {
  EVP_MD_CTX* ctx = NewContext();
  EVP_DigestUpdate(ctx, data.data(), data.size());
  std::string hex = FinishContext(ctx);
  EVP_MD_CTX_free(ctx);
  return hex;
}

std::string Sha256Hex(std::span<const unsigned char> data) {
  return Sha256Hex(std::string_view(reinterpret_cast<const char*>(data.data()),
                                    data.size()));
}

std::string Sha256File(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Throw(ErrorCode::kIo, "cannot open " + path.string());
  EVP_MD_CTX* ctx = NewContext();
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    EVP_DigestUpdate(ctx, buf.data(), static_cast<size_t>(in.gcount()));
  }
  std::string hex = FinishContext(ctx);
  EVP_MD_CTX_free(ctx);
  return hex;
}

Hasher::Hasher() : ctx_(NewContext()) {}

Hasher::~Hasher() { EVP_MD_CTX_free(static_cast<EVP_MD_CTX*>(ctx_)); }

Hasher& Hasher::Add(std::string_view part) {
  auto* ctx = static_cast<EVP_MD_CTX*>(ctx_);
  const uint64_t len = part.size();
  EVP_DigestUpdate(ctx, &len, sizeof(len));
  EVP_DigestUpdate(ctx, part.data(), part.size());
  return *this;
}

std::string Hasher::Finish() {
  return FinishContext(static_cast<EVP_MD_CTX*>(ctx_));
}

}  // namespace egohl
