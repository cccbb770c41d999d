// Copyright 2026 The measure_steer Authors
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

#ifndef MSTEER_PARALLEL_H
#define MSTEER_PARALLEL_H

#include <cstddef>
#include <functional>

namespace msteer {

/// Worker threads to use: hardware concurrency, capped by the
/// MEASURE_STEER_THREADS environment variable when it holds a positive integer.
size_t worker_count();

/// Calls body(i) for i in [0, n), spread over worker_count() threads.
/// body must be safe to call concurrently for distinct i. The first exception
/// thrown by any call is rethrown after all workers finish.
void parallel_for(size_t n, const std::function<void(size_t)> &body);

}  // namespace msteer

#endif
