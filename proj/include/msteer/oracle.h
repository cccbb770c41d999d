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

#ifndef MSTEER_ORACLE_H
#define MSTEER_ORACLE_H

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "msteer/bloch.h"
#include "msteer/planner.h"

namespace msteer {

using Mat4 = Eigen::Matrix4cd;
using Ket2 = Eigen::Vector2cd;

/// Spherical coordinates of a measurement axis.
struct AxisAngles {
    double theta = 0.0;
    double phi = 0.0;

    BlochProjector axis() const;
    /// Canonical angles (theta in [0, pi], phi in [0, 2 pi)) of a unit vector.
    static AxisAngles from_axis(const Vec3 &a);
};

struct OptimizationResult {
    std::vector<BlochProjector> best_axes;
    double best_objective = 0.0;
    int64_t evaluations = 0;
    bool converged = false;
};

/// Objective Tr[rho_N Theta] after measuring `axes` in order, starting from a0.
double objective_eval(std::span<const BlochProjector> axes, const StokesVector &a0, const TargetOperator &target);

/// Multi-start compass search over the 2N spherical angles of the axes.
///
/// Each restart draws its starting axes uniformly on the sphere from its own
/// stream Rng(seed, restart). The step starts at pi/4 and is halved whenever no
/// compass move improves the objective; the restart ends once the step drops
/// below `tol`. Restarts run in parallel; the best objective wins, ties going to
/// the lowest restart index. `converged` compares against the closed-form
/// optimum: best_objective >= j_max - tol.
OptimizationResult numeric_optimize(const PlanProblem &problem, int restarts, double tol, uint64_t seed);

/// Exhaustive search over theta_i = pi i / r (i = 0..r) and
/// phi_j = pi j / r (j = 0..2r-1) for each axis, r = resolution.
/// Only N <= 2 is feasible; larger problems raise ErrorKind::ResourceLimit.
/// `converged` means the best grid value is within kGridTol of the closed form.
inline constexpr double kGridTol = 1e-4;
OptimizationResult grid_search(const PlanProblem &problem, int resolution);

/// System (x) ancilla density matrix. Index = 2 * system + ancilla, both
/// factors ordered (|2>, |1>).
class CompositeState {
   public:
    /// Throws ErrorKind::InvalidState unless m is Hermitian, unit-trace and positive within kInputTol.
    explicit CompositeState(const Mat4 &m);
    static CompositeState product(const DensityMatrix2 &system, const DensityMatrix2 &ancilla);

    const Mat4 &matrix() const {
        return m_;
    }

   private:
    Mat4 m_;
};

/// Eigenvectors (|psi>, |psi'>) of axis.sigma for eigenvalues +1 and -1, each
/// with its first nonzero component real and positive.
std::pair<Ket2, Ket2> axis_eigenbasis(const BlochProjector &axis);

/// U_psi = I - 2 |phi><phi| with |phi> = |psi'> (|1'> - |2'>) / sqrt(2).
Mat4 ancilla_unitary(const BlochProjector &axis);

/// Couples rho to an ancilla prepared in |1'>, applies U_psi, measures the
/// ancilla energy non-selectively and traces it out.
DensityMatrix2 ancilla_indirect_measure(const DensityMatrix2 &rho, const BlochProjector &axis);

DensityMatrix2 partial_trace_ancilla(const CompositeState &cs);

}  // namespace msteer

#endif
