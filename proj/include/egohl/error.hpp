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

#ifndef EGOHL_ERROR_HPP_
#define EGOHL_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace egohl {

enum class ErrorCode {
  kInvalidInput = 1,
  kEmptyInput = 2,
  kLookup = 3,
  kIo = 4,
  kDecode = 5,
  kPipeline = 6,
};

const char* ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception type. The C API
// maps `code()` onto its integer error codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Throw(ErrorCode code, const std::string& message);

}  // namespace egohl

#endif  // EGOHL_ERROR_HPP_
