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

#ifndef MSTEER_ANTIZENO_H
#define MSTEER_ANTIZENO_H

#include <utility>
#include <vector>

#include "msteer/bloch.h"

namespace msteer {

struct ZenoCurvePoint {
    double t = 0.0;
    Vec3 w = Vec3::Zero();
};

struct ConvergenceReport {
    int n = 0;
    double max_deviation = 0.0;
    /// Entry k-1 holds |w_{n,k} - w_{t_k}| for k = 1..n.
    std::vector<double> per_step_deviation;
};

/// Continuous-measurement path in the x-z plane:
/// w_t = -cos(pi t/T) e_z + sin(pi t/T) e_x.
ZenoCurvePoint zeno_curve_planar(double t, double target_time);

/// Out-of-plane path reached as the limit of the free-evolution optimal axes:
/// w~_t = -cos(pi t/T) e_z + sin(pi t/T) [cos(pi t/T) e_x + sin(pi t/T) e_y].
ZenoCurvePoint zeno_curve_tilde(double t, double target_time);

/// Distance between the n-measurement population-transfer states and the
/// planar curve sampled at t_k = k T / (n + 1).
ConvergenceReport convergence_error(int n, double target_time);

/// (n, population_transfer_bound(n)) for n = 0..n_max.
std::vector<std::pair<int, double>> sweep_population(int n_max);

}  // namespace msteer

#endif
