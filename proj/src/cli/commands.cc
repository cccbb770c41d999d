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

#include "msteer/cli/commands.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>

#include "msteer/antizeno.h"
#include "msteer/dynamics.h"
#include "msteer/error.h"
#include "msteer/oracle.h"
#include "msteer/planner.h"
#include "msteer/rng.h"

namespace msteer::cli {

namespace {

using nlohmann::json;

// Simulated objectives are composed from at most a few thousand rotations and
// projections; anything beyond this is a bug, not rounding.
constexpr double kInvariantTol = 1e-9;
constexpr double kAncillaTol = 1e-12;
// The sweep re-simulates every plan, which is quadratic in n_max.
constexpr int kSweepSimulationLimit = 2000;

json vec_json(const Vec3 &v) {
    return json::array({v.x(), v.y(), v.z()});
}

void check_invariant(bool ok, const std::string &what) {
    if (!ok) {
        throw Error(ErrorKind::InvariantViolation, what);
    }
}

struct StaticSetup {
    TargetOperator theta_tilde;
    Hamiltonian2 ham;
    PlanProblem problem;
};

StaticSetup static_setup(const ExperimentConfig &c, const std::string &command) {
    if (!c.initial_stokes) {
        throw ConfigError("initial_stokes", "required by " + command);
    }
    if (!c.target) {
        throw ConfigError("target", "required by " + command);
    }
    if (!c.num_measurements) {
        throw ConfigError("num_measurements", "required by " + command);
    }
    Hamiltonian2 ham = c.hamiltonian.value_or(Hamiltonian2{});
    // With free evolution the configured target is the one at time T; the
    // static problem uses its Heisenberg-picture counterpart.
    TargetOperator theta = conjugate_target(*c.target, ham, c.target_time);
    return {*c.target, ham, PlanProblem(*c.initial_stokes, theta, *c.num_measurements)};
}

Schedule schedule_for(const ExperimentConfig &c, const MeasurementPlan &plan) {
    if (plan.axes.empty()) {
        return Schedule({}, c.target_time);
    }
    if (!c.times) {
        return Schedule::uniform(static_cast<int>(plan.axes.size()), c.target_time);
    }
    if (c.times->size() != plan.axes.size()) {
        throw ConfigError("times", "expected " + std::to_string(plan.axes.size()) + " entries");
    }
    return Schedule(*c.times, c.target_time);
}

double invariant_scale(const TargetOperator &t) {
    return std::max(1.0, std::abs(t.lambda0) + t.lambda.norm());
}

json result_json(const OptimizationResult &r, double analytic) {
    json axes = json::array();
    for (const auto &a : r.best_axes) {
        axes.push_back(vec_json(a.vec()));
    }
    return {{"best_objective", r.best_objective},
            {"gap", analytic - r.best_objective},
            {"evaluations", r.evaluations},
            {"converged", r.converged},
            {"best_axes", axes}};
}

std::vector<Cell> result_row(const std::string &method, double analytic, const OptimizationResult &r) {
    return {method, analytic, r.best_objective, analytic - r.best_objective, r.evaluations,
            std::string(r.converged ? "true" : "false")};
}

std::string cell_text(const Cell &cell) {
    return std::visit(
        [](const auto &v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "";
            } else if constexpr (std::is_same_v<T, int64_t>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, double>) {
                return format_double(v);
            } else {
                return v;
            }
        },
        cell);
}

json cell_json(const Cell &cell) {
    return std::visit(
        [](const auto &v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else {
                return v;
            }
        },
        cell);
}

json table_json(const Table &table) {
    json rows = json::array();
    for (const auto &row : table.rows) {
        json obj = json::object();
        for (size_t i = 0; i < table.columns.size(); ++i) {
            obj[table.columns[i]] = cell_json(row[i]);
        }
        rows.push_back(std::move(obj));
    }
    return rows;
}

std::string summary_text(const json &v) {
    if (v.is_number_float()) {
        return format_double(v.get<double>());
    }
    return v.dump();
}

}  // namespace

ResultRecord cmd_plan(const ExperimentConfig &config) {
    ResultRecord rec;
    rec.command = "plan";
    rec.config = config_to_json(config);
    StaticSetup s = static_setup(config, "plan");
    MeasurementPlan plan = plan_optimal(s.problem);
    double simulated = objective_eval(plan.axes, s.problem.a0, s.problem.target);
    check_invariant(std::abs(simulated - plan.j_max) <= kInvariantTol * invariant_scale(s.problem.target),
                    "simulated plan objective disagrees with j_max");

    rec.summary["j_max"] = plan.j_max;
    rec.summary["delta_phi"] = plan.delta_phi;
    rec.summary["rotation_axis"] = vec_json(plan.rotation_axis);
    rec.summary["degenerate"] = plan.degenerate;
    rec.summary["baseline_objective"] = target_expectation(s.problem.a0, s.problem.target);
    rec.summary["simulated_objective"] = simulated;

    bool timed = config.hamiltonian.has_value();
    rec.table.columns = {"k", "a_x", "a_y", "a_z", "w_x", "w_y", "w_z", "w_norm"};
    json axes = json::array(), states = json::array(), axes_tilde = json::array();
    std::optional<TimedPlan> timed_plan;
    if (timed) {
        rec.table.columns.insert(rec.table.columns.end(), {"t", "a_tilde_x", "a_tilde_y", "a_tilde_z"});
        timed_plan = conjugate_plan(plan, s.ham, schedule_for(config, plan));
        rec.summary["conjugated_target"] = {{"lambda0", s.problem.target.lambda0},
                                            {"lambda_vector", vec_json(s.problem.target.lambda)}};
    }
    for (size_t k = 0; k < plan.axes.size(); ++k) {
        const Vec3 &a = plan.axes[k].vec();
        const StokesVector &w = plan.predicted_states[k];
        std::vector<Cell> row = {static_cast<int64_t>(k + 1), a.x(), a.y(), a.z(), w.x(), w.y(), w.z(), w.norm()};
        axes.push_back(vec_json(a));
        states.push_back(vec_json(w.vec()));
        if (timed_plan) {
            const Vec3 &at = timed_plan->axes_tilde[k].vec();
            row.insert(row.end(), {timed_plan->schedule.times()[k], at.x(), at.y(), at.z()});
            axes_tilde.push_back(vec_json(at));
        }
        rec.table.rows.push_back(std::move(row));
    }
    rec.outputs["axes"] = axes;
    rec.outputs["predicted_states"] = states;
    if (timed_plan) {
        rec.outputs["times"] = timed_plan->schedule.times();
        rec.outputs["axes_tilde"] = axes_tilde;
    }
    return rec;
}

ResultRecord cmd_simulate(const ExperimentConfig &config) {
    ResultRecord rec;
    rec.command = "simulate";
    rec.config = config_to_json(config);
    StaticSetup s = static_setup(config, "simulate");
    MeasurementPlan plan = plan_optimal(s.problem);
    TimedPlan timed = conjugate_plan(plan, s.ham, schedule_for(config, plan));
    TimedResult result = simulate_timed(s.problem.a0, timed, s.theta_tilde);
    check_invariant(std::abs(result.objective - plan.j_max) <= kInvariantTol * invariant_scale(s.theta_tilde),
                    "timed objective disagrees with the static optimum");

    rec.summary["objective"] = result.objective;
    rec.summary["j_max"] = plan.j_max;
    rec.summary["gap"] = plan.j_max - result.objective;
    rec.table.columns = {"k", "t", "w_x", "w_y", "w_z", "w_norm"};
    for (const auto &p : result.trajectory) {
        rec.table.rows.push_back({static_cast<int64_t>(p.k), p.t, p.w.x(), p.w.y(), p.w.z(), p.w.norm()});
    }
    json axes = json::array();
    for (const auto &a : timed.axes_tilde) {
        axes.push_back(vec_json(a.vec()));
    }
    rec.outputs["axes_tilde"] = axes;
    rec.outputs["trajectory"] = table_json(rec.table);
    return rec;
}

ResultRecord cmd_sweep(const ExperimentConfig &config) {
    ResultRecord rec;
    rec.command = "sweep";
    rec.config = config_to_json(config);
    auto rows = sweep_population(config.n_max);
    const StokesVector ground(0, 0, -1);
    const TargetOperator excited(0.5, Vec3(0, 0, 0.5));

    rec.table.columns = {"n", "rho22", "simulated_rho22", "abs_diff"};
    bool monotone = true;
    double max_diff = 0.0;
    for (size_t i = 0; i < rows.size(); ++i) {
        auto [n, rho22] = rows[i];
        if (n >= 2 && !(rho22 > rows[i - 1].second)) {
            monotone = false;
        }
        std::vector<Cell> row = {static_cast<int64_t>(n), rho22, std::monostate{}, std::monostate{}};
        if (n <= kSweepSimulationLimit) {
            MeasurementPlan plan = plan_optimal(PlanProblem(ground, excited, n));
            double simulated = objective_eval(plan.axes, ground, excited);
            double diff = std::abs(simulated - rho22);
            max_diff = std::max(max_diff, diff);
            row[2] = simulated;
            row[3] = diff;
        }
        rec.table.rows.push_back(std::move(row));
    }
    check_invariant(max_diff <= kInvariantTol, "simulated population transfer disagrees with the bound");
    rec.summary["n_max"] = config.n_max;
    rec.summary["monotone"] = monotone;
    rec.summary["max_abs_diff"] = max_diff;
    rec.outputs["rows"] = table_json(rec.table);
    return rec;
}

ResultRecord cmd_oracle(const ExperimentConfig &config) {
    ResultRecord rec;
    rec.command = "oracle";
    rec.config = config_to_json(config);
    StaticSetup s = static_setup(config, "oracle");
    double analytic = plan_optimal(s.problem).j_max;
    OptimizationResult numeric = numeric_optimize(s.problem, config.restarts, config.tolerance, config.seed);
    check_invariant(numeric.best_objective <= analytic + kInvariantTol,
                    "numeric search exceeded the closed-form optimum");

    rec.summary["analytic_j_max"] = analytic;
    rec.table.columns = {"method", "analytic", "best", "gap", "evaluations", "converged"};
    rec.table.rows.push_back(result_row("numeric", analytic, numeric));
    rec.outputs["numeric"] = result_json(numeric, analytic);

    std::optional<int> resolution = config.grid_resolution;
    if (!resolution) {
        resolution = default_grid_resolution(s.problem.n);
    }
    if (resolution) {
        OptimizationResult grid = grid_search(s.problem, *resolution);
        check_invariant(grid.best_objective <= analytic + kInvariantTol, "grid search exceeded the closed-form optimum");
        rec.table.rows.push_back(result_row("grid", analytic, grid));
        rec.outputs["grid"] = result_json(grid, analytic);
    } else {
        rec.outputs["grid"] = nullptr;
    }
    return rec;
}

ResultRecord cmd_antizeno(const ExperimentConfig &config) {
    ResultRecord rec;
    rec.command = "antizeno";
    rec.config = config_to_json(config);
    const double T = config.target_time;
    if (!(T > 0.0)) {
        throw ConfigError("target_time", "antizeno needs a positive target time");
    }
    rec.table.columns = {"section", "n", "t", "x", "y", "z", "max_deviation", "ratio"};
    const std::monostate none;
    json convergence = json::array();
    double previous = 0.0;
    for (size_t i = 0; i < config.n_list.size(); ++i) {
        ConvergenceReport report = convergence_error(config.n_list[i], T);
        Cell ratio = none;
        if (i > 0) {
            ratio = report.max_deviation / previous;
        }
        previous = report.max_deviation;
        rec.table.rows.push_back({std::string("convergence"), static_cast<int64_t>(report.n), none, none, none, none,
                                  report.max_deviation, ratio});
        convergence.push_back({{"n", report.n}, {"max_deviation", report.max_deviation}, {"ratio", cell_json(ratio)}});
    }
    json planar = json::array(), tilde = json::array();
    for (const char *section : {"planar", "tilde"}) {
        bool is_planar = std::string(section) == "planar";
        for (int i = 0; i < config.curve_samples; ++i) {
            double t = (i == config.curve_samples - 1) ? T : T * i / (config.curve_samples - 1);
            ZenoCurvePoint p = is_planar ? zeno_curve_planar(t, T) : zeno_curve_tilde(t, T);
            rec.table.rows.push_back({std::string(section), none, p.t, p.w.x(), p.w.y(), p.w.z(), none, none});
            (is_planar ? planar : tilde).push_back({{"t", p.t}, {"w", vec_json(p.w)}});
        }
    }
    rec.outputs["convergence"] = convergence;
    rec.outputs["planar_curve"] = planar;
    rec.outputs["tilde_curve"] = tilde;
    return rec;
}

ResultRecord cmd_ancilla_check(const ExperimentConfig &config) {
    ResultRecord rec;
    rec.command = "ancilla-check";
    rec.config = config_to_json(config);
    rec.table.columns = {"trial", "w_x", "w_y", "w_z", "a_x", "a_y", "a_z", "deviation"};
    double max_dev = 0.0;
    // Trial 0 is the ground state measured along its own axis; the rest are seeded random pairs.
    for (int trial = 0; trial <= config.trials; ++trial) {
        StokesVector w(0, 0, -1);
        BlochProjector axis(0, 0, -1);
        if (trial > 0) {
            Rng rng(config.seed, static_cast<uint64_t>(trial));
            w = StokesVector(rng.ball_vector());
            axis = BlochProjector::from_direction(rng.unit_vector());
        }
        DensityMatrix2 rho = stokes_to_density(w);
        Mat2 diff = ancilla_indirect_measure(rho, axis).matrix() - measure_channel_matrix(axis, rho).matrix();
        double dev = diff.cwiseAbs().maxCoeff();
        max_dev = std::max(max_dev, dev);
        rec.table.rows.push_back({static_cast<int64_t>(trial), w.x(), w.y(), w.z(), axis.vec().x(), axis.vec().y(),
                                  axis.vec().z(), dev});
    }
    check_invariant(max_dev <= kAncillaTol, "indirect measurement deviates from the direct channel");
    rec.summary["trials"] = config.trials;
    rec.summary["max_deviation"] = max_dev;
    rec.outputs["rows"] = table_json(rec.table);
    return rec;
}

const std::vector<std::string> &command_names() {
    static const std::vector<std::string> names = {"plan", "simulate", "sweep", "oracle", "antizeno", "ancilla-check"};
    return names;
}

ResultRecord run_command(const std::string &name, const ExperimentConfig &config) {
    auto start = std::chrono::steady_clock::now();
    ResultRecord rec;
    if (name == "plan") {
        rec = cmd_plan(config);
    } else if (name == "simulate") {
        rec = cmd_simulate(config);
    } else if (name == "sweep") {
        rec = cmd_sweep(config);
    } else if (name == "oracle") {
        rec = cmd_oracle(config);
    } else if (name == "antizeno") {
        rec = cmd_antizeno(config);
    } else if (name == "ancilla-check") {
        rec = cmd_ancilla_check(config);
    } else {
        throw ConfigError("command", "unknown command '" + name + "'");
    }
    rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

OutputFormat default_format(const std::string &command) {
    return (command == "plan" || command == "oracle") ? OutputFormat::Json : OutputFormat::Csv;
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_csv(const ResultRecord &record, std::ostream &out) {
    out << "# command: " << record.command << "\n";
    out << "# config: " << record.config.dump() << "\n";
    for (const auto &[key, value] : record.summary.items()) {
        out << "# " << key << ": " << summary_text(value) << "\n";
    }
    out << "# wall_time_s: " << format_double(record.wall_time_s) << "\n";
    for (size_t i = 0; i < record.table.columns.size(); ++i) {
        out << (i ? "," : "") << record.table.columns[i];
    }
    out << "\n";
    for (const auto &row : record.table.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << cell_text(row[i]);
        }
        out << "\n";
    }
}

void write_json(const ResultRecord &record, std::ostream &out) {
    json outputs = record.summary;
    outputs.update(record.outputs);
    json doc = {{"command", record.command},
                {"config", record.config},
                {"outputs", outputs},
                {"wall_time_s", record.wall_time_s}};
    out << doc.dump(2) << "\n";
}

}  // namespace msteer::cli
