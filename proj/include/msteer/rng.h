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

#ifndef MSTEER_RNG_H
#define MSTEER_RNG_H

#include <cstdint>
#include <random>

#include "msteer/bloch.h"

namespace msteer {

/// splitmix64 finalizer; used to derive independent stream seeds.
uint64_t splitmix64(uint64_t x);

/// Seedable generator with a platform-independent stream.
///
/// The engine is std::mt19937_64, whose output sequence is fully pinned down by
/// the C++ standard. The standard distributions are not, so doubles are formed
/// here from the top 53 bits of each draw. Stream `index` under `seed` is
/// seeded with splitmix64(seed ^ splitmix64(index)), which makes per-restart
/// streams independent of how restarts are scheduled across threads.
class Rng {
   public:
    explicit Rng(uint64_t seed, uint64_t index = 0);

    uint64_t next_u64() {
        return engine_();
    }
    /// Uniform in [0, 1).
    double uniform();
    /// Uniform in [lo, hi).
    double uniform(double lo, double hi);
    /// Uniform on the unit sphere.
    Vec3 unit_vector();
    /// Uniform in the unit ball.
    Vec3 ball_vector();

   private:
    std::mt19937_64 engine_;
};

}  // namespace msteer

#endif
