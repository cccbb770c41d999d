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

#include "msteer/antizeno.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "msteer/error.h"
#include "msteer/planner.h"

namespace msteer {

namespace {

constexpr double kPi = std::numbers::pi;

// sin(pi f) and cos(pi f) for f in [0, 1], exact at f = 0, 1/2, 1.
double sin_pi(double f) {
    return std::sin(kPi * (f > 0.5 ? 1.0 - f : f));
}

double cos_pi(double f) {
    return std::sin(kPi * (0.5 - f));
}

// Fraction t / T of the transfer time.
double curve_fraction(double t, double target_time) {
    if (!(target_time > 0.0) || !std::isfinite(target_time)) {
        throw Error(ErrorKind::InvalidTime, "target time must be positive");
    }
    if (!(t >= 0.0 && t <= target_time)) {
        throw Error(ErrorKind::InvalidTime, "t must lie in [0, T]");
    }
    return t / target_time;
}

}  // namespace

ZenoCurvePoint zeno_curve_planar(double t, double target_time) {
    double f = curve_fraction(t, target_time);
    return {t, Vec3(sin_pi(f), 0.0, -cos_pi(f))};
}

ZenoCurvePoint zeno_curve_tilde(double t, double target_time) {
    double f = curve_fraction(t, target_time);
    double s = sin_pi(f);
    return {t, Vec3(s * cos_pi(f), s * s, -cos_pi(f))};
}

ConvergenceReport convergence_error(int n, double target_time) {
    if (n < 1) {
        throw Error(ErrorKind::InvalidParameter, "convergence_error needs n >= 1");
    }
    ConvergenceReport report;
    report.n = n;
    report.per_step_deviation.reserve(n);
    const double shrink = std::cos(kPi / (n + 1));
    for (int k = 1; k <= n; ++k) {
        double t = target_time * k / (n + 1);
        Vec3 on_curve = zeno_curve_planar(t, target_time).w;
        double f = static_cast<double>(k) / (n + 1);
        Vec3 state = std::pow(shrink, k) * Vec3(sin_pi(f), 0.0, -cos_pi(f));
        report.per_step_deviation.push_back((state - on_curve).norm());
    }
    report.max_deviation = *std::max_element(report.per_step_deviation.begin(), report.per_step_deviation.end());
    return report;
}

std::vector<std::pair<int, double>> sweep_population(int n_max) {
    if (n_max < 1) {
        throw Error(ErrorKind::InvalidParameter, "sweep needs n_max >= 1");
    }
    std::vector<std::pair<int, double>> rows;
    rows.reserve(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
        rows.emplace_back(n, population_transfer_bound(n));
    }
    return rows;
}

}  // namespace msteer
