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

#include <gtest/gtest.h>

#include <numbers>

#include "msteer/error.h"
#include "msteer/rng.h"

using namespace msteer;
using cd = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;
const StokesVector kGround(0, 0, -1);
const TargetOperator kExcited(0.5, Vec3(0, 0, 0.5));

Mat2 ground_matrix() {
    Mat2 m = Mat2::Zero();
    m(1, 1) = 1;
    return m;
}

bool same_result(const OptimizationResult &a, const OptimizationResult &b) {
    if (a.best_objective != b.best_objective || a.evaluations != b.evaluations || a.converged != b.converged ||
        a.best_axes.size() != b.best_axes.size()) {
        return false;
    }
    for (size_t i = 0; i < a.best_axes.size(); ++i) {
        if (a.best_axes[i].vec() != b.best_axes[i].vec()) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST(oracle, objective_eval_examples) {
    StokesVector a0(0.3, -0.4, 0.5);
    TargetOperator t(0.25, Vec3(1, 2, -1));
    EXPECT_EQ(objective_eval({}, a0, t), 0.25 + a0.vec().dot(t.lambda));

    PlanProblem p(a0, t, 4);
    MeasurementPlan plan = plan_optimal(p);
    EXPECT_NEAR(objective_eval(plan.axes, a0, t), plan.j_max, 1e-12);

    BlochProjector own = BlochProjector::from_direction(a0.vec());
    std::vector<BlochProjector> repeated(5, own);
    EXPECT_NEAR(objective_eval(repeated, a0, t), 0.25 + a0.vec().dot(t.lambda), 1e-15);
}

TEST(oracle, axis_angles_round_trip) {
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        Vec3 a = rng.unit_vector();
        AxisAngles ang = AxisAngles::from_axis(a);
        EXPECT_GE(ang.theta, 0.0);
        EXPECT_LE(ang.theta, kPi);
        EXPECT_GE(ang.phi, 0.0);
        EXPECT_LT(ang.phi, 2 * kPi);
        EXPECT_LE((ang.axis().vec() - a).norm(), 1e-14);
    }
}

TEST(oracle, numeric_optimize_single_measurement) {
    OptimizationResult r = numeric_optimize(PlanProblem(kGround, kExcited, 1), 16, 1e-6, 0);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.best_objective, 0.5, 1e-6);
    EXPECT_LE(r.best_objective, 0.5 + 1e-9);
    EXPECT_EQ(r.best_axes.size(), 1u);
}

TEST(oracle, numeric_optimize_three_measurements) {
    OptimizationResult r = numeric_optimize(PlanProblem(kGround, kExcited, 3), 32, 1e-4, 1);
    EXPECT_NEAR(r.best_objective, 0.625, 1e-4);
    EXPECT_LE(r.best_objective, 0.625 + 1e-9);
    EXPECT_TRUE(r.converged);
}

TEST(oracle, numeric_optimize_cross_validates_random_problems) {
    Rng rng(90210);
    for (int trial = 0; trial < 10; ++trial) {
        PlanProblem p(StokesVector(rng.ball_vector()), TargetOperator(rng.uniform(-1, 1), rng.ball_vector()), 2);
        double analytic = plan_optimal(p).j_max;
        OptimizationResult r = numeric_optimize(p, 32, 1e-4, trial);
        EXPECT_NEAR(r.best_objective, analytic, 1e-4);
        EXPECT_LE(r.best_objective, analytic + 1e-9);
        EXPECT_NEAR(objective_eval(r.best_axes, p.a0, p.target), r.best_objective, 1e-12);
    }
}

TEST(oracle, numeric_optimize_is_deterministic) {
    PlanProblem p(StokesVector(0.1, 0.5, -0.3), TargetOperator(0.2, Vec3(-0.4, 0.3, 0.8)), 3);
    OptimizationResult a = numeric_optimize(p, 12, 1e-5, 42);
    OptimizationResult b = numeric_optimize(p, 12, 1e-5, 42);
    EXPECT_TRUE(same_result(a, b));
    OptimizationResult c = numeric_optimize(p, 12, 1e-5, 43);
    EXPECT_NE(a.evaluations, c.evaluations);
}

TEST(oracle, numeric_optimize_independent_of_thread_count) {
    PlanProblem p(StokesVector(0.6, 0.1, -0.3), TargetOperator(0.0, Vec3(0.2, -0.9, 0.1)), 2);
    setenv("MEASURE_STEER_THREADS", "1", 1);
    OptimizationResult serial = numeric_optimize(p, 9, 1e-5, 5);
    setenv("MEASURE_STEER_THREADS", "4", 1);
    OptimizationResult parallel = numeric_optimize(p, 9, 1e-5, 5);
    unsetenv("MEASURE_STEER_THREADS");
    EXPECT_TRUE(same_result(serial, parallel));
}

TEST(oracle, numeric_optimize_rejects_bad_parameters) {
    PlanProblem p(kGround, kExcited, 1);
    EXPECT_THROW(numeric_optimize(p, 0, 1e-4, 0), Error);
    EXPECT_THROW(numeric_optimize(p, 4, 0.0, 0), Error);
    EXPECT_THROW(numeric_optimize(p, 4, 2.0, 0), Error);
}

TEST(oracle, numeric_optimize_no_measurements) {
    PlanProblem p(StokesVector(0.3, 0, 0), TargetOperator(0.1, Vec3(1, 0, 0)), 0);
    OptimizationResult r = numeric_optimize(p, 3, 1e-4, 0);
    EXPECT_TRUE(r.best_axes.empty());
    EXPECT_NEAR(r.best_objective, 0.4, 1e-15);
    EXPECT_TRUE(r.converged);
}

TEST(oracle, grid_search_examples) {
    OptimizationResult one = grid_search(PlanProblem(kGround, kExcited, 1), 720);
    EXPECT_NEAR(one.best_objective, 0.5, 1e-4);
    EXPECT_LE(one.best_objective, 0.5 + 1e-9);

    PlanProblem none(StokesVector(0.2, 0.1, 0), TargetOperator(0.3, Vec3(1, 1, 0)), 0);
    OptimizationResult zero = grid_search(none, 8);
    EXPECT_NEAR(zero.best_objective, 0.3 + 0.3, 1e-15);
    EXPECT_TRUE(zero.best_axes.empty());

    PlanProblem aligned(StokesVector(0, 0, 0.8), TargetOperator(0.1, Vec3(0, 0, 2)), 1);
    OptimizationResult al = grid_search(aligned, 16);
    EXPECT_NEAR(al.best_objective, 0.1 + 2 * 0.8, 1e-12);
    EXPECT_NEAR(std::abs(al.best_axes[0].vec().z()), 1.0, 1e-15);
}

TEST(oracle, grid_search_never_beats_closed_form) {
    Rng rng(64);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 1 + trial % 2;
        PlanProblem p(StokesVector(rng.ball_vector()), TargetOperator(rng.uniform(-1, 1), rng.ball_vector()), n);
        double analytic = plan_optimal(p).j_max;
        OptimizationResult coarse = grid_search(p, n == 1 ? 90 : 12);
        OptimizationResult fine = grid_search(p, n == 1 ? 360 : 24);
        EXPECT_LE(coarse.best_objective, analytic + 1e-9);
        EXPECT_LE(fine.best_objective, analytic + 1e-9);
        EXPECT_LE(analytic - fine.best_objective, n == 1 ? 1e-3 : 2e-2);
    }
}

TEST(oracle, grid_search_limits) {
    EXPECT_THROW(grid_search(PlanProblem(kGround, kExcited, 1), 4), Error);
    try {
        grid_search(PlanProblem(kGround, kExcited, 3), 8);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::ResourceLimit);
    }
    EXPECT_THROW(grid_search(PlanProblem(kGround, kExcited, 2), 200), Error);
}

TEST(oracle, ancilla_unitary_is_a_reflection) {
    Rng rng(21);
    for (int i = 0; i < 100; ++i) {
        Mat4 u = ancilla_unitary(BlochProjector(rng.unit_vector()));
        EXPECT_LE((u * u.adjoint() - Mat4::Identity()).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_LE((u - u.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
    }
    for (Vec3 a : {Vec3(0, 0, 1), Vec3(0, 0, -1)}) {
        Mat4 u = ancilla_unitary(BlochProjector(a));
        EXPECT_LE((u * u.adjoint() - Mat4::Identity()).cwiseAbs().maxCoeff(), 1e-15);
    }
}

TEST(oracle, ancilla_unitary_routes_psi_prime_to_excited_ancilla) {
    BlochProjector axis(Vec3(0.3, -0.4, std::sqrt(0.75)));
    auto [psi, psi_prime] = axis_eigenbasis(axis);
    Mat4 u = ancilla_unitary(axis);
    auto with_ancilla = [](const Ket2 &s, int anc) {
        Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
        for (int i = 0; i < 2; ++i) {
            v(2 * i + anc) = s(i);
        }
        return v;
    };
    // Ancilla index 1 is |1'>, index 0 is |2'>.
    EXPECT_LE((u * with_ancilla(psi, 1) - with_ancilla(psi, 1)).norm(), 1e-15);
    EXPECT_LE((u * with_ancilla(psi_prime, 1) - with_ancilla(psi_prime, 0)).norm(), 1e-15);
}

TEST(oracle, eigenbasis_phase_convention) {
    Rng rng(22);
    for (int i = 0; i < 100; ++i) {
        Vec3 a = rng.unit_vector();
        auto [plus, minus] = axis_eigenbasis(BlochProjector(a));
        Mat2 obs = sigma_dot(a);
        EXPECT_LE((obs * plus - plus).norm(), 1e-14);
        EXPECT_LE((obs * minus + minus).norm(), 1e-14);
        for (const Ket2 &v : {plus, minus}) {
            int lead = std::abs(v(0)) > 1e-12 ? 0 : 1;
            EXPECT_EQ(v(lead).imag(), 0.0);
            EXPECT_GT(v(lead).real(), 0.0);
        }
    }
    auto [up, down] = axis_eigenbasis(BlochProjector(0, 0, 1));
    EXPECT_EQ(up, Ket2(1, 0));
    EXPECT_EQ(down, Ket2(0, 1));
}

TEST(oracle, ancilla_indirect_measure_examples) {
    DensityMatrix2 ground(ground_matrix());
    EXPECT_LE((ancilla_indirect_measure(ground, BlochProjector(0, 0, -1)).matrix() - ground_matrix())
                  .cwiseAbs()
                  .maxCoeff(),
              1e-15);
    EXPECT_LE((ancilla_indirect_measure(ground, BlochProjector(1, 0, 0)).matrix() - 0.5 * Mat2::Identity())
                  .cwiseAbs()
                  .maxCoeff(),
              1e-15);
}

TEST(oracle, ancilla_equals_direct_channel) {
    Rng rng(100);
    for (int i = 0; i < 100; ++i) {
        DensityMatrix2 rho = stokes_to_density(StokesVector(rng.ball_vector()));
        BlochProjector axis(rng.unit_vector());
        Mat2 diff = ancilla_indirect_measure(rho, axis).matrix() - measure_channel_matrix(axis, rho).matrix();
        EXPECT_LE(diff.cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(oracle, partial_trace_examples) {
    DensityMatrix2 rho = stokes_to_density(StokesVector(0.3, -0.2, 0.5));
    Mat2 anc = Mat2::Zero();
    anc(1, 1) = 1;
    CompositeState product = CompositeState::product(rho, DensityMatrix2(anc));
    EXPECT_LE((partial_trace_ancilla(product).matrix() - rho.matrix()).cwiseAbs().maxCoeff(), 1e-15);

    CompositeState mixed(Mat4(0.25 * Mat4::Identity()));
    EXPECT_LE((partial_trace_ancilla(mixed).matrix() - 0.5 * Mat2::Identity()).cwiseAbs().maxCoeff(), 1e-15);

    Eigen::Vector4cd bell(1, 0, 0, 1);
    bell /= std::sqrt(2.0);
    CompositeState entangled(Mat4(bell * bell.adjoint()));
    EXPECT_LE((partial_trace_ancilla(entangled).matrix() - 0.5 * Mat2::Identity()).cwiseAbs().maxCoeff(), 1e-15);

    Mat4 bad = Mat4::Identity();
    EXPECT_THROW(CompositeState{bad}, Error);
}
