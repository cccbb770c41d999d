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

#include "msteer/dynamics.h"

#include <cmath>
#include <string>

#include "msteer/error.h"

namespace msteer {

namespace {

// Rotation of v generated by h over time t: angle 2|h|t about h/|h|.
Vec3 precess(const Vec3 &v, const Vec3 &h, double t) {
    double hn = h.norm();
    if (hn == 0.0 || t == 0.0) {
        return v;
    }
    return rotate(v, h / hn, 2.0 * hn * t);
}

}  // namespace

Hamiltonian2::Hamiltonian2(double h0, const Vec3 &h) : h0(h0), h(h) {
    if (!std::isfinite(h0) || !h.allFinite()) {
        throw Error(ErrorKind::InvalidParameter, "Hamiltonian coefficients must be finite");
    }
}

Mat2 Hamiltonian2::matrix() const {
    return h0 * Mat2::Identity() + sigma_dot(h);
}

Schedule::Schedule(std::vector<double> times, double target_time)
    : times_(std::move(times)), target_time_(target_time) {
    if (!std::isfinite(target_time) || target_time < 0.0) {
        throw Error(ErrorKind::InvalidSchedule, "target time must be finite and non-negative");
    }
    for (size_t i = 0; i < times_.size(); ++i) {
        double t = times_[i];
        if (!std::isfinite(t) || t < 0.0 || t > target_time) {
            throw Error(ErrorKind::InvalidSchedule,
                        "time " + std::to_string(i + 1) + " = " + std::to_string(t) + " is outside [0, T]");
        }
        if (i > 0 && !(t > times_[i - 1])) {
            throw Error(ErrorKind::InvalidSchedule, "measurement times must be strictly increasing");
        }
    }
}

Schedule Schedule::uniform(int n, double target_time) {
    if (n < 0) {
        throw Error(ErrorKind::InvalidSchedule, "number of measurements must be non-negative");
    }
    std::vector<double> times;
    times.reserve(n);
    for (int k = 1; k <= n; ++k) {
        times.push_back(target_time * k / (n + 1));
    }
    return Schedule(std::move(times), target_time);
}

StokesVector free_rotation(const StokesVector &w, const Hamiltonian2 &ham, double dt) {
    if (!(dt >= 0.0)) {
        throw Error(ErrorKind::InvalidTime, "evolution time must be non-negative");
    }
    return StokesVector(precess(w.vec(), ham.h, dt));
}

TargetOperator conjugate_target(const TargetOperator &theta_tilde, const Hamiltonian2 &ham, double target_time) {
    if (!(target_time >= 0.0)) {
        throw Error(ErrorKind::InvalidTime, "target time must be non-negative");
    }
    return TargetOperator(theta_tilde.lambda0, precess(theta_tilde.lambda, ham.h, -target_time));
}

TimedPlan conjugate_plan(const MeasurementPlan &plan, const Hamiltonian2 &ham, const Schedule &schedule) {
    if (plan.axes.size() != schedule.size()) {
        throw Error(ErrorKind::InvalidSchedule, "plan has " + std::to_string(plan.axes.size()) +
                                                    " measurements but schedule has " +
                                                    std::to_string(schedule.size()) + " times");
    }
    TimedPlan timed{{}, schedule, ham};
    timed.axes_tilde.reserve(plan.axes.size());
    for (size_t k = 0; k < plan.axes.size(); ++k) {
        timed.axes_tilde.emplace_back(precess(plan.axes[k].vec(), ham.h, schedule.times()[k]));
    }
    return timed;
}

TimedResult simulate_timed(const StokesVector &rho0, const TimedPlan &timed, const TargetOperator &theta_tilde) {
    const auto &times = timed.schedule.times();
    if (timed.axes_tilde.size() != times.size()) {
        throw Error(ErrorKind::InvalidSchedule, "timed plan axes and schedule lengths differ");
    }
    TimedResult result;
    result.trajectory.reserve(times.size() + 1);
    StokesVector w = rho0;
    double t = 0.0;
    for (size_t k = 0; k < times.size(); ++k) {
        w = free_rotation(w, timed.hamiltonian, times[k] - t);
        w = measure_channel_stokes(timed.axes_tilde[k], w);
        t = times[k];
        result.trajectory.push_back({static_cast<int>(k + 1), t, w});
    }
    w = free_rotation(w, timed.hamiltonian, timed.schedule.target_time() - t);
    result.trajectory.push_back({static_cast<int>(times.size() + 1), timed.schedule.target_time(), w});
    result.objective = target_expectation(w, theta_tilde);
    return result;
}

}  // namespace msteer
