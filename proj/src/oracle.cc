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

#include "msteer/oracle.h"

#include <cmath>
#include <numbers>
#include <string>

#include "msteer/error.h"
#include "msteer/parallel.h"
#include "msteer/rng.h"

namespace msteer {

namespace {

using cd = std::complex<double>;

constexpr double kPi = std::numbers::pi;
constexpr double kInitialStep = kPi / 4;
// Per-restart safety cap; compass search with halving steps never gets close.
constexpr int64_t kMaxEvaluationsPerRestart = 2'000'000;
constexpr double kMaxGridEvaluations = 1e8;

Vec3 spherical(double theta, double phi) {
    return Vec3(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
}

// Objective as a function of the flattened angle vector (theta_1, phi_1, ...).
double angles_objective(std::span<const double> x, const StokesVector &a0, const TargetOperator &target) {
    Vec3 w = a0.vec();
    for (size_t k = 0; k + 1 < x.size(); k += 2) {
        Vec3 a = spherical(x[k], x[k + 1]);
        w = a * a.dot(w);
    }
    return target.lambda0 + w.dot(target.lambda);
}

std::vector<BlochProjector> angles_to_axes(std::span<const double> x) {
    std::vector<BlochProjector> axes;
    axes.reserve(x.size() / 2);
    for (size_t k = 0; k + 1 < x.size(); k += 2) {
        axes.push_back(BlochProjector::from_direction(spherical(x[k], x[k + 1])));
    }
    return axes;
}

struct RestartOutcome {
    std::vector<double> x;
    double value = 0.0;
    int64_t evaluations = 0;
};

RestartOutcome compass_search(const PlanProblem &problem, double tol, Rng &rng) {
    RestartOutcome out;
    out.x.reserve(2 * problem.n);
    for (int k = 0; k < problem.n; ++k) {
        AxisAngles start = AxisAngles::from_axis(rng.unit_vector());
        out.x.push_back(start.theta);
        out.x.push_back(start.phi);
    }
    out.value = angles_objective(out.x, problem.a0, problem.target);
    out.evaluations = 1;

    double step = kInitialStep;
    while (step >= tol && out.evaluations < kMaxEvaluationsPerRestart) {
        bool improved = false;
        for (size_t i = 0; i < out.x.size(); ++i) {
            for (double dir : {+1.0, -1.0}) {
                double saved = out.x[i];
                out.x[i] = saved + dir * step;
                double v = angles_objective(out.x, problem.a0, problem.target);
                ++out.evaluations;
                if (v > out.value) {
                    out.value = v;
                    improved = true;
                    break;
                }
                out.x[i] = saved;
            }
        }
        if (!improved) {
            step *= 0.5;
        }
    }
    return out;
}

Mat4 kron(const Mat2 &a, const Mat2 &b) {
    Mat4 m;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            m.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
    }
    return m;
}

// Eigenvector of a.sigma with eigenvalue +1, first nonzero entry real positive.
Ket2 plus_eigenvector(const Vec3 &a) {
    Ket2 v;
    // Two algebraically equivalent forms; pick the one away from its zero.
    if (a.z() >= 0) {
        v << cd(1 + a.z(), 0), cd(a.x(), a.y());
    } else {
        v << cd(a.x(), -a.y()), cd(1 - a.z(), 0);
    }
    v.normalize();
    int lead = std::abs(v(0)) > 1e-12 ? 0 : 1;
    v *= std::conj(v(lead)) / std::abs(v(lead));
    v(lead) = cd(v(lead).real(), 0.0);
    return v;
}

}  // namespace

BlochProjector AxisAngles::axis() const {
    return BlochProjector::from_direction(spherical(theta, phi));
}

AxisAngles AxisAngles::from_axis(const Vec3 &a) {
    double theta = std::atan2(std::hypot(a.x(), a.y()), a.z());
    double phi = std::atan2(a.y(), a.x());
    if (phi < 0) {
        phi += 2 * kPi;
    }
    if (phi >= 2 * kPi) {
        phi = 0.0;
    }
    return {theta, phi};
}

double objective_eval(std::span<const BlochProjector> axes, const StokesVector &a0, const TargetOperator &target) {
    StokesVector w = a0;
    for (const auto &a : axes) {
        w = measure_channel_stokes(a, w);
    }
    return target_expectation(w, target);
}

OptimizationResult numeric_optimize(const PlanProblem &problem, int restarts, double tol, uint64_t seed) {
    if (restarts < 1) {
        throw Error(ErrorKind::InvalidParameter, "restarts must be at least 1");
    }
    if (!(tol > 0.0 && tol <= kInitialStep)) {
        throw Error(ErrorKind::InvalidParameter, "tolerance must lie in (0, pi/4]");
    }
    const double analytic = plan_optimal(problem).j_max;

    std::vector<RestartOutcome> outcomes(restarts);
    parallel_for(restarts, [&](size_t r) {
        Rng rng(seed, r);
        outcomes[r] = compass_search(problem, tol, rng);
    });

    OptimizationResult result;
    size_t best = 0;
    for (size_t r = 0; r < outcomes.size(); ++r) {
        result.evaluations += outcomes[r].evaluations;
        if (outcomes[r].value > outcomes[best].value) {
            best = r;
        }
    }
    result.best_axes = angles_to_axes(outcomes[best].x);
    result.best_objective = objective_eval(result.best_axes, problem.a0, problem.target);
    result.converged = result.best_objective >= analytic - tol;
    return result;
}

OptimizationResult grid_search(const PlanProblem &problem, int resolution) {
    if (resolution < 8) {
        throw Error(ErrorKind::InvalidParameter, "grid resolution must be at least 8");
    }
    if (problem.n > 2) {
        throw Error(ErrorKind::ResourceLimit, "grid search supports at most 2 measurements, got " +
                                                  std::to_string(problem.n));
    }
    // Poles contribute one point each; every interior theta row has 2r phis.
    std::vector<Vec3> points;
    points.reserve(static_cast<size_t>(resolution - 1) * 2 * resolution + 2);
    for (int i = 0; i <= resolution; ++i) {
        double theta = kPi * i / resolution;
        int phis = (i == 0 || i == resolution) ? 1 : 2 * resolution;
        for (int j = 0; j < phis; ++j) {
            points.push_back(spherical(theta, kPi * j / resolution));
        }
    }
    double total = std::pow(static_cast<double>(points.size()), problem.n);
    if (total > kMaxGridEvaluations) {
        throw Error(ErrorKind::ResourceLimit, "grid of " + std::to_string(total) + " points exceeds the limit");
    }

    const Vec3 &w0 = problem.a0.vec();
    const double lambda0 = problem.target.lambda0;
    const Vec3 &lambda = problem.target.lambda;
    OptimizationResult result;
    std::vector<size_t> best_idx;
    double best = 0.0;
    if (problem.n == 0) {
        best = lambda0 + w0.dot(lambda);
        result.evaluations = 1;
    } else if (problem.n == 1) {
        best = -INFINITY;
        for (size_t i = 0; i < points.size(); ++i) {
            const Vec3 &a = points[i];
            double v = lambda0 + a.dot(w0) * a.dot(lambda);
            if (v > best) {
                best = v;
                best_idx = {i};
            }
        }
        result.evaluations = static_cast<int64_t>(points.size());
    } else {
        best = -INFINITY;
        for (size_t i = 0; i < points.size(); ++i) {
            Vec3 w1 = points[i] * points[i].dot(w0);
            for (size_t j = 0; j < points.size(); ++j) {
                const Vec3 &a = points[j];
                double v = lambda0 + a.dot(w1) * a.dot(lambda);
                if (v > best) {
                    best = v;
                    best_idx = {i, j};
                }
            }
        }
        result.evaluations = static_cast<int64_t>(points.size() * points.size());
    }
    for (size_t idx : best_idx) {
        result.best_axes.push_back(BlochProjector::from_direction(points[idx]));
    }
    result.best_objective = objective_eval(result.best_axes, problem.a0, problem.target);
    result.converged = result.best_objective >= plan_optimal(problem).j_max - kGridTol;
    return result;
}

CompositeState::CompositeState(const Mat4 &m) : m_(m) {
    if (!m.allFinite()) {
        throw Error(ErrorKind::InvalidState, "composite state has non-finite entries");
    }
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kInputTol) {
        throw Error(ErrorKind::InvalidState, "composite state is not Hermitian");
    }
    if (std::abs(m.trace() - cd(1, 0)) > kInputTol) {
        throw Error(ErrorKind::InvalidState, "composite state trace differs from 1");
    }
    Mat4 herm = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat4> solver(herm, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -kInputTol) {
        throw Error(ErrorKind::InvalidState, "composite state has a negative eigenvalue");
    }
}

CompositeState CompositeState::product(const DensityMatrix2 &system, const DensityMatrix2 &ancilla) {
    return CompositeState(kron(system.matrix(), ancilla.matrix()));
}

std::pair<Ket2, Ket2> axis_eigenbasis(const BlochProjector &axis) {
    return {plus_eigenvector(axis.vec()), plus_eigenvector(-axis.vec())};
}

Mat4 ancilla_unitary(const BlochProjector &axis) {
    const Ket2 psi_prime = axis_eigenbasis(axis).second;
    // Ancilla basis (|2'>, |1'>): |1'> - |2'> = (-1, 1).
    Ket2 anc;
    anc << cd(-1, 0), cd(1, 0);
    anc /= std::sqrt(2.0);
    Eigen::Vector4cd phi;
    for (int s = 0; s < 2; ++s) {
        for (int a = 0; a < 2; ++a) {
            phi(2 * s + a) = psi_prime(s) * anc(a);
        }
    }
    return Mat4::Identity() - 2.0 * phi * phi.adjoint();
}

DensityMatrix2 ancilla_indirect_measure(const DensityMatrix2 &rho, const BlochProjector &axis) {
    Mat2 ground_ancilla = Mat2::Zero();
    ground_ancilla(1, 1) = 1.0;  // |1'><1'|
    Mat4 u = ancilla_unitary(axis);
    Mat4 evolved = u * kron(rho.matrix(), ground_ancilla) * u.adjoint();
    // Non-selective ancilla energy measurement: drop coherences between ancilla levels.
    Mat4 dephased = Mat4::Zero();
    for (int a = 0; a < 2; ++a) {
        for (int s = 0; s < 2; ++s) {
            for (int t = 0; t < 2; ++t) {
                dephased(2 * s + a, 2 * t + a) = evolved(2 * s + a, 2 * t + a);
            }
        }
    }
    return partial_trace_ancilla(CompositeState(dephased));
}

DensityMatrix2 partial_trace_ancilla(const CompositeState &cs) {
    const Mat4 &m = cs.matrix();
    Mat2 out;
    for (int s = 0; s < 2; ++s) {
        for (int t = 0; t < 2; ++t) {
            out(s, t) = m(2 * s, 2 * t) + m(2 * s + 1, 2 * t + 1);
        }
    }
    return DensityMatrix2(out);
}

}  // namespace msteer
