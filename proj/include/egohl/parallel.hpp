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

#ifndef EGOHL_PARALLEL_HPP_
#define EGOHL_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace egohl {

// Runs body(i) for i in [0, count) on up to `workers` threads. Each index is
// visited exactly once; callers write results into pre-sized slots so the
// reduction order never depends on scheduling. The first exception thrown by
// any body is rethrown on the calling thread after all workers stop.
void ParallelFor(size_t count, int workers,
                 const std::function<void(size_t)>& body);

}  // namespace egohl

#endif  // EGOHL_PARALLEL_HPP_
