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

#ifndef MSTEER_PLANNER_H
#define MSTEER_PLANNER_H

#include <vector>

#include "msteer/bloch.h"

namespace msteer {

/// Norms at or below this are treated as zero (no state / no target direction).
inline constexpr double kDegenerateNorm = 1e-12;

struct PlanProblem {
    StokesVector a0;
    TargetOperator target;
    int n = 0;

    PlanProblem() = default;
    /// Throws ErrorKind::InvalidParameter when n < 0.
    PlanProblem(StokesVector a0, TargetOperator target, int n);
};

/// Optimal measurement sequence for a PlanProblem.
///
/// `axes[k-1]` is the k-th measured projector and `predicted_states[k-1]` the
/// state right after it. Consecutive axes are separated by the constant angle
/// delta_phi / (n + 1) in the plane orthogonal to `rotation_axis`.
struct MeasurementPlan {
    std::vector<BlochProjector> axes;
    std::vector<StokesVector> predicted_states;
    double j_max = 0.0;
    double delta_phi = 0.0;
    Vec3 rotation_axis = Vec3::UnitZ();
    /// Set when |a0| or |lambda| vanish; the plan then has no axes.
    bool degenerate = false;
};

/// Angle between a0 and the target direction lambda, in [0, pi].
/// Throws ErrorKind::DegenerateProblem when either vector is (numerically) zero.
double delta_phi(const StokesVector &a0, const TargetOperator &target);

/// Unit axis about which a0 is rotated towards the target direction. Falls
/// back to a0 x e_x (or a0 x e_y when a0 is along x) when the two directions
/// are parallel or antiparallel.
Vec3 steering_axis(const Vec3 &a0_dir, const Vec3 &target_dir);

MeasurementPlan plan_optimal(const PlanProblem &problem);

/// lambda0 + lambda_norm * a0_norm * cos(delta_phi / (n + 1))^(n + 1)
double max_objective(double delta_phi, int n, double lambda0, double lambda_norm, double a0_norm);

/// Largest excited-state population reachable from the ground state with n
/// optimal measurements: (1 + cos(pi / (n + 1))^(n + 1)) / 2.
double population_transfer_bound(int n);

/// Smallest n with population_transfer_bound(n) >= 1 - epsilon, found by an
/// exact scan of the bound. epsilon must lie in (0, 1/2].
int min_measurements_for(double epsilon);

}  // namespace msteer

#endif
