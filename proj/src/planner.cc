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

#include "msteer/planner.h"

#include <cmath>
#include <numbers>
#include <string>

#include "msteer/error.h"

namespace msteer {

namespace {

// Below this |u x v| two unit directions count as parallel or antiparallel.
constexpr double kParallelSin = 1e-12;

}  // namespace

PlanProblem::PlanProblem(StokesVector a0, TargetOperator target, int n)
    : a0(std::move(a0)), target(std::move(target)), n(n) {
    if (n < 0) {
        throw Error(ErrorKind::InvalidParameter, "number of measurements must be non-negative, got " + std::to_string(n));
    }
}

double delta_phi(const StokesVector &a0, const TargetOperator &target) {
    if (a0.norm() <= kDegenerateNorm) {
        throw Error(ErrorKind::DegenerateProblem, "initial Stokes vector is (numerically) zero");
    }
    if (target.lambda.norm() <= kDegenerateNorm) {
        throw Error(ErrorKind::DegenerateProblem, "target vector lambda is (numerically) zero");
    }
    return angle_between(a0.vec(), target.lambda);
}

Vec3 steering_axis(const Vec3 &a0_dir, const Vec3 &target_dir) {
    Vec3 c = a0_dir.cross(target_dir);
    if (c.norm() > kParallelSin) {
        return c.normalized();
    }
    // Rotating u about normalize(u x e) moves u towards +e.
    c = a0_dir.cross(Vec3::UnitX());
    if (c.norm() > 1e-6) {
        return c.normalized();
    }
    return a0_dir.cross(Vec3::UnitY()).normalized();
}

MeasurementPlan plan_optimal(const PlanProblem &problem) {
    MeasurementPlan plan;
    const double a0_norm = problem.a0.norm();
    const double lambda_norm = problem.target.lambda.norm();
    if (a0_norm <= kDegenerateNorm || lambda_norm <= kDegenerateNorm) {
        plan.degenerate = true;
        plan.j_max = problem.target.lambda0;
        return plan;
    }

    const Vec3 u = problem.a0.vec() / a0_norm;
    const Vec3 w_target = problem.target.lambda / lambda_norm;
    plan.delta_phi = delta_phi(problem.a0, problem.target);
    plan.rotation_axis = steering_axis(u, w_target);

    const double step = plan.delta_phi / (problem.n + 1);
    const double shrink = std::cos(step);
    plan.axes.reserve(problem.n);
    plan.predicted_states.reserve(problem.n);
    for (int k = 1; k <= problem.n; ++k) {
        BlochProjector axis(rotate(u, plan.rotation_axis, k * step));
        plan.predicted_states.emplace_back(a0_norm * std::pow(shrink, k) * axis.vec());
        plan.axes.push_back(std::move(axis));
    }
    plan.j_max = max_objective(plan.delta_phi, problem.n, problem.target.lambda0, lambda_norm, a0_norm);
    return plan;
}

double max_objective(double delta_phi, int n, double lambda0, double lambda_norm, double a0_norm) {
    if (!(delta_phi >= 0.0 && delta_phi <= std::numbers::pi)) {
        throw Error(ErrorKind::InvalidAngle, "delta_phi must lie in [0, pi], got " + std::to_string(delta_phi));
    }
    if (n < 0) {
        throw Error(ErrorKind::InvalidParameter, "number of measurements must be non-negative");
    }
    if (!(lambda_norm >= 0.0) || !(a0_norm >= 0.0) || !std::isfinite(lambda_norm) || !std::isfinite(a0_norm) ||
        !std::isfinite(lambda0)) {
        throw Error(ErrorKind::InvalidParameter, "norms must be finite and non-negative");
    }
    return lambda0 + lambda_norm * a0_norm * std::pow(std::cos(delta_phi / (n + 1)), n + 1);
}

double population_transfer_bound(int n) {
    if (n < 0) {
        throw Error(ErrorKind::InvalidParameter, "number of measurements must be non-negative");
    }
    return 0.5 * (1.0 + std::pow(std::cos(std::numbers::pi / (n + 1)), n + 1));
}

int min_measurements_for(double epsilon) {
    if (!(epsilon > 0.0 && epsilon <= 0.5)) {
        throw Error(ErrorKind::InvalidParameter, "epsilon must lie in (0, 1/2], got " + std::to_string(epsilon));
    }
    const double goal = 1.0 - epsilon;
    // bound(0) = 0 < goal, and the bound is strictly increasing for n >= 1.
    int hi = 1;
    while (population_transfer_bound(hi) < goal) {
        if (hi > (1 << 29)) {
            throw Error(ErrorKind::ResourceLimit, "epsilon too small: required N exceeds 2^30");
        }
        hi *= 2;
    }
    int lo = hi / 2;  // bound(lo) < goal (lo = 0 when hi = 1)
    while (hi - lo > 1) {
        int mid = lo + (hi - lo) / 2;
        if (population_transfer_bound(mid) >= goal) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

}  // namespace msteer
