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

#include "msteer/cli/config.h"

#include <cmath>
#include <numbers>
#include <set>

#include "msteer/error.h"

namespace msteer::cli {

namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys = {
    "initial_stokes", "target", "num_measurements", "hamiltonian", "times",  "target_time",   "seed",
    "restarts",       "tolerance", "n_max",         "n_list",      "curve_samples", "trials", "grid_resolution",
};

double as_number(const json &v, const std::string &field) {
    if (!v.is_number()) {
        throw ConfigError(field, "expected a number");
    }
    double x = v.get<double>();
    if (!std::isfinite(x)) {
        throw ConfigError(field, "expected a finite number");
    }
    return x;
}

int64_t as_integer(const json &v, const std::string &field) {
    if (v.is_number_integer()) {
        return v.get<int64_t>();
    }
    if (v.is_number_float()) {
        double x = v.get<double>();
        if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9e15) {
            return static_cast<int64_t>(x);
        }
    }
    throw ConfigError(field, "expected an integer");
}

int as_int_in(const json &v, const std::string &field, int64_t lo, int64_t hi) {
    int64_t x = as_integer(v, field);
    if (x < lo || x > hi) {
        throw ConfigError(field, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                                     std::to_string(x));
    }
    return static_cast<int>(x);
}

Vec3 as_vec3(const json &v, const std::string &field) {
    if (!v.is_array() || v.size() != 3) {
        throw ConfigError(field, "expected an array of 3 numbers");
    }
    return Vec3(as_number(v[0], field + "[0]"), as_number(v[1], field + "[1]"), as_number(v[2], field + "[2]"));
}

std::complex<double> as_complex(const json &v, const std::string &field) {
    if (v.is_number()) {
        return {as_number(v, field), 0.0};
    }
    if (!v.is_array() || v.size() != 2) {
        throw ConfigError(field, "expected [re, im]");
    }
    return {as_number(v[0], field + "[0]"), as_number(v[1], field + "[1]")};
}

TargetOperator parse_target(const json &v) {
    if (!v.is_object()) {
        throw ConfigError("target", "expected an object");
    }
    bool has_matrix = v.contains("matrix");
    bool has_lambda = v.contains("lambda0") || v.contains("lambda_vector");
    if (has_matrix == has_lambda) {
        throw ConfigError("target", "give either {lambda0, lambda_vector} or {matrix}");
    }
    for (const auto &[key, _] : v.items()) {
        if (key != "matrix" && key != "lambda0" && key != "lambda_vector") {
            throw ConfigError("target." + key, "unknown key");
        }
    }
    if (has_lambda) {
        if (!v.contains("lambda0") || !v.contains("lambda_vector")) {
            throw ConfigError("target", "both lambda0 and lambda_vector are required");
        }
        return TargetOperator(as_number(v["lambda0"], "target.lambda0"),
                              as_vec3(v["lambda_vector"], "target.lambda_vector"));
    }
    const json &m = v["matrix"];
    if (!m.is_array() || m.size() != 2 || !m[0].is_array() || m[0].size() != 2 || !m[1].is_array() ||
        m[1].size() != 2) {
        throw ConfigError("target.matrix", "expected a 2x2 array of [re, im] entries");
    }
    Mat2 mat;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            mat(i, j) = as_complex(m[i][j], "target.matrix[" + std::to_string(i) + "][" + std::to_string(j) + "]");
        }
    }
    try {
        return target_from_matrix(mat);
    } catch (const Error &e) {
        throw ConfigError("target.matrix", e.what());
    }
}

Hamiltonian2 parse_hamiltonian(const json &v) {
    if (!v.is_object()) {
        throw ConfigError("hamiltonian", "expected an object");
    }
    for (const auto &[key, _] : v.items()) {
        if (key != "h0" && key != "h_vector") {
            throw ConfigError("hamiltonian." + key, "unknown key");
        }
    }
    double h0 = v.contains("h0") ? as_number(v["h0"], "hamiltonian.h0") : 0.0;
    Vec3 h = v.contains("h_vector") ? as_vec3(v["h_vector"], "hamiltonian.h_vector") : Vec3::Zero();
    return Hamiltonian2(h0, h);
}

json vec_json(const Vec3 &v) {
    return json::array({v.x(), v.y(), v.z()});
}

}  // namespace

ConfigError::ConfigError(std::string field, const std::string &message)
    : std::runtime_error(field + ": " + message), field_(std::move(field)) {
}

ExperimentConfig::ExperimentConfig() : target_time(std::numbers::pi) {
}

ExperimentConfig parse_config(const json &doc) {
    ExperimentConfig c;
    if (doc.is_null()) {
        return c;
    }
    if (!doc.is_object()) {
        throw ConfigError("<root>", "config must be a JSON object");
    }
    for (const auto &[key, _] : doc.items()) {
        if (!kKnownKeys.contains(key)) {
            throw ConfigError(key, "unknown key");
        }
    }
    if (doc.contains("initial_stokes")) {
        Vec3 w = as_vec3(doc["initial_stokes"], "initial_stokes");
        try {
            c.initial_stokes = StokesVector(w);
        } catch (const Error &e) {
            throw ConfigError("initial_stokes", e.what());
        }
    }
    if (doc.contains("target")) {
        c.target = parse_target(doc["target"]);
    }
    if (doc.contains("num_measurements")) {
        c.num_measurements = as_int_in(doc["num_measurements"], "num_measurements", 0, 10'000'000);
    }
    if (doc.contains("hamiltonian")) {
        c.hamiltonian = parse_hamiltonian(doc["hamiltonian"]);
    }
    if (doc.contains("target_time")) {
        c.target_time = as_number(doc["target_time"], "target_time");
        if (c.target_time < 0) {
            throw ConfigError("target_time", "must be non-negative");
        }
    }
    if (doc.contains("times")) {
        const json &t = doc["times"];
        if (!t.is_array()) {
            throw ConfigError("times", "expected an array of numbers");
        }
        std::vector<double> times;
        for (size_t i = 0; i < t.size(); ++i) {
            times.push_back(as_number(t[i], "times[" + std::to_string(i) + "]"));
        }
        try {
            Schedule(times, c.target_time);
        } catch (const Error &e) {
            throw ConfigError("times", e.what());
        }
        if (c.num_measurements && times.size() != static_cast<size_t>(*c.num_measurements)) {
            throw ConfigError("times", "expected num_measurements = " + std::to_string(*c.num_measurements) +
                                           " entries, got " + std::to_string(times.size()));
        }
        c.times = std::move(times);
    }
    if (doc.contains("seed")) {
        int64_t s = as_integer(doc["seed"], "seed");
        if (s < 0) {
            throw ConfigError("seed", "must be non-negative");
        }
        c.seed = static_cast<uint64_t>(s);
    }
    if (doc.contains("restarts")) {
        c.restarts = as_int_in(doc["restarts"], "restarts", 1, 1'000'000);
    }
    if (doc.contains("tolerance")) {
        c.tolerance = as_number(doc["tolerance"], "tolerance");
        if (!(c.tolerance > 0.0 && c.tolerance <= std::numbers::pi / 4)) {
            throw ConfigError("tolerance", "must lie in (0, pi/4]");
        }
    }
    if (doc.contains("n_max")) {
        c.n_max = as_int_in(doc["n_max"], "n_max", 1, 10'000'000);
    }
    if (doc.contains("n_list")) {
        const json &l = doc["n_list"];
        if (!l.is_array() || l.empty()) {
            throw ConfigError("n_list", "expected a non-empty array of integers");
        }
        c.n_list.clear();
        for (size_t i = 0; i < l.size(); ++i) {
            c.n_list.push_back(as_int_in(l[i], "n_list[" + std::to_string(i) + "]", 1, 100'000'000));
        }
    }
    if (doc.contains("curve_samples")) {
        c.curve_samples = as_int_in(doc["curve_samples"], "curve_samples", 2, 1'000'000);
    }
    if (doc.contains("trials")) {
        c.trials = as_int_in(doc["trials"], "trials", 0, 100'000'000);
    }
    if (doc.contains("grid_resolution")) {
        c.grid_resolution = as_int_in(doc["grid_resolution"], "grid_resolution", 8, 100'000);
    }
    return c;
}

std::optional<int> default_grid_resolution(int n) {
    if (n <= 1) {
        return 180;
    }
    if (n == 2) {
        return 24;
    }
    return std::nullopt;
}

json config_to_json(const ExperimentConfig &c) {
    json j;
    j["initial_stokes"] = c.initial_stokes ? vec_json(c.initial_stokes->vec()) : json(nullptr);
    if (c.target) {
        j["target"] = {{"lambda0", c.target->lambda0}, {"lambda_vector", vec_json(c.target->lambda)}};
    } else {
        j["target"] = nullptr;
    }
    j["num_measurements"] = c.num_measurements ? json(*c.num_measurements) : json(nullptr);
    Hamiltonian2 ham = c.hamiltonian.value_or(Hamiltonian2{});
    j["hamiltonian"] = {{"h0", ham.h0}, {"h_vector", vec_json(ham.h)}};
    if (c.times) {
        j["times"] = *c.times;
    } else if (c.num_measurements) {
        j["times"] = Schedule::uniform(*c.num_measurements, c.target_time).times();
    } else {
        j["times"] = nullptr;
    }
    j["target_time"] = c.target_time;
    j["seed"] = c.seed;
    j["restarts"] = c.restarts;
    j["tolerance"] = c.tolerance;
    j["n_max"] = c.n_max;
    j["n_list"] = c.n_list;
    j["curve_samples"] = c.curve_samples;
    j["trials"] = c.trials;
    std::optional<int> grid = c.grid_resolution;
    if (!grid && c.num_measurements) {
        grid = default_grid_resolution(*c.num_measurements);
    }
    j["grid_resolution"] = grid ? json(*grid) : json(nullptr);
    return j;
}

}  // namespace msteer::cli
