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

#include "egohl/error.hpp"

namespace egohl {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput:
      return "invalid input";
    case ErrorCode::kEmptyInput:
      return "empty input";
    case ErrorCode::kLookup:
      return "lookup error";
    case ErrorCode::kIo:
      return "i/o error";
    case ErrorCode::kDecode:
      return "decode error";
    case ErrorCode::kPipeline:
      return "pipeline error";
  }
  return "unknown error";
}

void Throw(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace egohl
