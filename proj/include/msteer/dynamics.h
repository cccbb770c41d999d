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

#ifndef MSTEER_DYNAMICS_H
#define MSTEER_DYNAMICS_H

#include <vector>

#include "msteer/bloch.h"
#include "msteer/planner.h"

namespace msteer {

/// H0 = h0 I + h.sigma. The identity part never affects the state.
struct Hamiltonian2 {
    double h0 = 0.0;
    Vec3 h = Vec3::Zero();

    Hamiltonian2() = default;
    Hamiltonian2(double h0, const Vec3 &h);

    Mat2 matrix() const;
};

/// Measurement times 0 <= t_1 < ... < t_N <= T.
class Schedule {
   public:
    Schedule() = default;
    /// Throws ErrorKind::InvalidSchedule unless the times are strictly
    /// increasing and inside [0, target_time].
    Schedule(std::vector<double> times, double target_time);
    /// t_k = T k / (n + 1), k = 1..n.
    static Schedule uniform(int n, double target_time);

    const std::vector<double> &times() const {
        return times_;
    }
    double target_time() const {
        return target_time_;
    }
    size_t size() const {
        return times_.size();
    }

   private:
    std::vector<double> times_;
    double target_time_ = 0.0;
};

struct TimedPlan {
    std::vector<BlochProjector> axes_tilde;
    Schedule schedule;
    Hamiltonian2 hamiltonian;
};

struct TrajectoryPoint {
    /// 1..N after the k-th measurement, N + 1 at the target time.
    int k = 0;
    double t = 0.0;
    StokesVector w;
};

struct TimedResult {
    std::vector<TrajectoryPoint> trajectory;
    double objective = 0.0;
};

/// State after evolving for dt under H0: w rotated right-handedly about h/|h|
/// by 2 |h| dt.
StokesVector free_rotation(const StokesVector &w, const Hamiltonian2 &ham, double dt);

/// Heisenberg-picture target e^{iTH0} Theta~ e^{-iTH0}; lambda is rotated by -2|h|T.
TargetOperator conjugate_target(const TargetOperator &theta_tilde, const Hamiltonian2 &ham, double target_time);

/// Maps the static optimal plan to the observables to measure at the
/// scheduled times under free evolution: a~_k = e^{-i t_k H0} a_k e^{i t_k H0}.
TimedPlan conjugate_plan(const MeasurementPlan &plan, const Hamiltonian2 &ham, const Schedule &schedule);

/// Alternates free evolution and measurement, then evolves to T.
TimedResult simulate_timed(const StokesVector &rho0, const TimedPlan &timed, const TargetOperator &theta_tilde);

}  // namespace msteer

#endif
