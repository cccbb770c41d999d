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

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <numbers>

#include "msteer/error.h"
#include "msteer/oracle.h"
#include "msteer/rng.h"

using namespace msteer;

namespace {

constexpr double kPi = std::numbers::pi;
const StokesVector kGround(0, 0, -1);
const TargetOperator kExcited(0.5, Vec3(0, 0, 0.5));

using BigFloat = boost::multiprecision::cpp_bin_float_50;

// 50-digit evaluation of (1 + cos(pi/(n+1))^(n+1)) / 2.
BigFloat bound_high_precision(int n) {
    BigFloat pi = boost::math::constants::pi<BigFloat>();
    return (1 + boost::multiprecision::pow(boost::multiprecision::cos(pi / (n + 1)), n + 1)) / 2;
}

PlanProblem random_problem(Rng &rng, int n) {
    return PlanProblem(StokesVector(rng.ball_vector()), TargetOperator(rng.uniform(-1, 1), 2 * rng.ball_vector()), n);
}

}  // namespace

TEST(planner, delta_phi_examples) {
    EXPECT_EQ(delta_phi(kGround, kExcited), kPi);
    EXPECT_EQ(delta_phi(StokesVector(0, 0, 1), kExcited), 0.0);
    EXPECT_NEAR(delta_phi(StokesVector(1, 0, 0), kExcited), kPi / 2, 1e-15);
    EXPECT_THROW(delta_phi(StokesVector(), kExcited), Error);
    try {
        delta_phi(kGround, TargetOperator(1.0, Vec3::Zero()));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::DegenerateProblem);
    }
}

TEST(planner, population_transfer_axes_match_closed_form) {
    MeasurementPlan plan = plan_optimal(PlanProblem(kGround, kExcited, 10));
    ASSERT_EQ(plan.axes.size(), 10u);
    EXPECT_NEAR((plan.rotation_axis - Vec3(0, -1, 0)).norm(), 0.0, 1e-15);
    for (int k = 1; k <= 10; ++k) {
        Vec3 expected(std::sin(kPi * k / 11), 0.0, -std::cos(kPi * k / 11));
        EXPECT_LE((plan.axes[k - 1].vec() - expected).cwiseAbs().maxCoeff(), 1e-12) << "k=" << k;
        Vec3 state = std::pow(std::cos(kPi / 11), k) * expected;
        EXPECT_LE((plan.predicted_states[k - 1].vec() - state).cwiseAbs().maxCoeff(), 1e-12);
    }
    EXPECT_NEAR(plan.j_max, 0.5 * (1 + std::pow(std::cos(kPi / 11), 11)), 1e-15);
}

TEST(planner, aligned_and_single_measurement) {
    MeasurementPlan aligned = plan_optimal(PlanProblem(StokesVector(0, 0, 1), kExcited, 5));
    EXPECT_EQ(aligned.j_max, 1.0);
    for (const auto &a : aligned.axes) {
        EXPECT_EQ(a.vec(), Vec3(0, 0, 1));
    }
    MeasurementPlan one = plan_optimal(PlanProblem(kGround, kExcited, 1));
    EXPECT_NEAR(one.j_max, 0.5, 1e-16);
}

TEST(planner, degenerate_plans) {
    MeasurementPlan zero_state = plan_optimal(PlanProblem(StokesVector(), TargetOperator(0.3, Vec3(0, 1, 0)), 4));
    EXPECT_TRUE(zero_state.degenerate);
    EXPECT_TRUE(zero_state.axes.empty());
    EXPECT_EQ(zero_state.j_max, 0.3);

    MeasurementPlan zero_target = plan_optimal(PlanProblem(kGround, TargetOperator(0.7, Vec3::Zero()), 4));
    EXPECT_TRUE(zero_target.axes.empty());
    EXPECT_EQ(zero_target.j_max, 0.7);

    MeasurementPlan none = plan_optimal(PlanProblem(StokesVector(0.3, 0, 0.4), TargetOperator(0.1, Vec3(0, 0, 1)), 0));
    EXPECT_TRUE(none.axes.empty());
    EXPECT_NEAR(none.j_max, 0.1 + 0.4, 1e-15);

    EXPECT_THROW(PlanProblem(kGround, kExcited, -1), Error);
}

TEST(planner, max_objective_examples) {
    EXPECT_EQ(max_objective(kPi, 1, 0.5, 0.5, 1), 0.5);
    EXPECT_EQ(max_objective(kPi, 2, 0.5, 0.5, 1), 0.5625);
    EXPECT_EQ(max_objective(kPi, 3, 0.5, 0.5, 1), 0.625);
    EXPECT_THROW(max_objective(3.5, 1, 0, 1, 1), Error);
    EXPECT_THROW(max_objective(-0.1, 1, 0, 1, 1), Error);
    EXPECT_THROW(max_objective(1.0, -1, 0, 1, 1), Error);
}

TEST(planner, max_objective_monotone_and_bounded) {
    Rng rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        double dphi = rng.uniform(0, kPi);
        double l0 = rng.uniform(-1, 1), ln = rng.uniform(0, 2), an = rng.uniform(0, 1);
        double prev = -INFINITY;
        for (int n = 0; n <= 100; ++n) {
            double v = max_objective(dphi, n, l0, ln, an);
            EXPECT_GE(v, prev - 1e-15);
            EXPECT_LE(v, l0 + ln + 1e-15);
            prev = v;
        }
    }
}

TEST(planner, population_transfer_bound_examples) {
    EXPECT_EQ(population_transfer_bound(0), 0.0);
    EXPECT_EQ(population_transfer_bound(1), 0.5);
    EXPECT_EQ(population_transfer_bound(2), 0.5625);
    EXPECT_EQ(population_transfer_bound(3), 0.625);
    EXPECT_THROW(population_transfer_bound(-1), Error);
}

TEST(planner, population_transfer_bound_high_precision_oracle) {
    // Frozen 50-digit value; the multiprecision evaluation must reproduce it.
    const BigFloat frozen("0.95385874493612473388020174046317204857810");
    EXPECT_LT(boost::multiprecision::abs(bound_high_precision(50) - frozen), BigFloat("1e-40"));
    EXPECT_NEAR(population_transfer_bound(50), 0.95385874493612473388, 1e-15);
    for (int n = 0; n <= 200; ++n) {
        EXPECT_NEAR(population_transfer_bound(n), bound_high_precision(n).convert_to<double>(), 1e-14) << n;
    }
}

TEST(planner, population_transfer_bound_strictly_increasing) {
    for (int n = 1; n < 5000; ++n) {
        EXPECT_LT(population_transfer_bound(n), population_transfer_bound(n + 1)) << n;
    }
}

TEST(planner, min_measurements_for_examples) {
    EXPECT_EQ(min_measurements_for(0.5), 1);
    EXPECT_EQ(min_measurements_for(0.4), 3);
    int n = min_measurements_for(0.05);
    EXPECT_EQ(n, 46);  // exact scan with 40-digit arithmetic gives 46
    double ratio = n * 0.2 / (kPi * kPi);
    EXPECT_GE(ratio, 0.85);
    EXPECT_LE(ratio, 1.05);
    EXPECT_THROW(min_measurements_for(0.0), Error);
    EXPECT_THROW(min_measurements_for(0.6), Error);
}

TEST(planner, min_measurements_for_matches_linear_scan) {
    for (double eps : {0.3, 0.1, 0.05, 0.02, 0.01, 0.004}) {
        int linear = 1;
        while (population_transfer_bound(linear) < 1 - eps) {
            ++linear;
        }
        EXPECT_EQ(min_measurements_for(eps), linear) << eps;
    }
}

TEST(planner, simulation_reproduces_plan) {
    Rng rng(31337);
    for (int trial = 0; trial < 200; ++trial) {
        int n = static_cast<int>(rng.next_u64() % 51);
        PlanProblem p = random_problem(rng, n);
        MeasurementPlan plan = plan_optimal(p);
        auto states = measure_sequence(plan.axes, p.a0);
        ASSERT_EQ(states.size(), plan.predicted_states.size());
        for (size_t k = 0; k < states.size(); ++k) {
            EXPECT_LE((states[k].vec() - plan.predicted_states[k].vec()).norm(), 1e-12);
        }
        EXPECT_NEAR(objective_eval(plan.axes, p.a0, p.target), plan.j_max, 1e-12);
        if (!states.empty()) {
            EXPECT_NEAR(target_expectation(states.back(), p.target), plan.j_max, 1e-12);
        }
        EXPECT_LE(plan.j_max, p.target.lambda0 + p.target.lambda.norm() + 1e-15);
    }
}

TEST(planner, coplanar_equal_angles) {
    Rng rng(8);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 1 + static_cast<int>(rng.next_u64() % 30);
        PlanProblem p = random_problem(rng, n);
        MeasurementPlan plan = plan_optimal(p);
        double step = plan.delta_phi / (n + 1);
        Vec3 prev = p.a0.vec().normalized();
        EXPECT_NEAR(prev.dot(plan.rotation_axis), 0.0, 1e-12);
        for (const auto &a : plan.axes) {
            EXPECT_NEAR(a.vec().dot(plan.rotation_axis), 0.0, 1e-12);
            EXPECT_NEAR(angle_between(prev, a.vec()), step, 1e-10);
            prev = a.vec();
        }
        EXPECT_NEAR(angle_between(prev, p.target.lambda), step, 1e-10);
        // Norms shrink by cos(step) per measurement.
        double norm = p.a0.norm();
        for (const auto &w : plan.predicted_states) {
            norm *= std::cos(step);
            EXPECT_NEAR(w.norm(), std::abs(norm), 1e-12);
        }
    }
}

TEST(planner, local_optimality) {
    Rng rng(4242);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 1 + static_cast<int>(rng.next_u64() % 6);
        PlanProblem p = random_problem(rng, n);
        MeasurementPlan plan = plan_optimal(p);
        double base = objective_eval(plan.axes, p.a0, p.target);
        for (size_t k = 0; k < plan.axes.size(); ++k) {
            for (int d = 0; d < 8; ++d) {
                std::vector<BlochProjector> axes = plan.axes;
                Vec3 dir = rng.unit_vector();
                Vec3 tangent = (dir - dir.dot(axes[k].vec()) * axes[k].vec()).normalized();
                axes[k] = BlochProjector::from_direction(rotate(axes[k].vec(), axes[k].vec().cross(tangent).normalized(),
                                                                1e-3));
                EXPECT_LE(objective_eval(axes, p.a0, p.target), base + 1e-8);
            }
        }
    }
}

TEST(planner, antipodal_tie_break_is_deterministic) {
    // Antipodal along x falls back to the e_y construction.
    MeasurementPlan plan =
        plan_optimal(PlanProblem(StokesVector(-1, 0, 0), TargetOperator(0, Vec3(1, 0, 0)), 3));
    EXPECT_NEAR(plan.delta_phi, kPi, 1e-15);
    EXPECT_NEAR(plan.rotation_axis.dot(Vec3(0, 0, -1)), 1.0, 1e-15);
    EXPECT_GT(plan.axes[0].vec().y(), 0.0);
    EXPECT_NEAR(objective_eval(plan.axes, StokesVector(-1, 0, 0), TargetOperator(0, Vec3(1, 0, 0))), plan.j_max,
                1e-12);
    MeasurementPlan again =
        plan_optimal(PlanProblem(StokesVector(-1, 0, 0), TargetOperator(0, Vec3(1, 0, 0)), 3));
    EXPECT_EQ(plan.rotation_axis, again.rotation_axis);
}
