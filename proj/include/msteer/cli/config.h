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

#ifndef MSTEER_CLI_CONFIG_H
#define MSTEER_CLI_CONFIG_H

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "msteer/bloch.h"
#include "msteer/dynamics.h"

namespace msteer::cli {

/// Rejected configuration; `field()` names the offending JSON key.
class ConfigError : public std::runtime_error {
   public:
    ConfigError(std::string field, const std::string &message);
    const std::string &field() const noexcept {
        return field_;
    }

   private:
    std::string field_;
};

/// One experiment as read from the JSON config document.
///
/// {
///   "initial_stokes": [x, y, z],
///   "target": {"lambda0": l0, "lambda_vector": [x, y, z]}
///          | {"matrix": [[[re, im], [re, im]], [[re, im], [re, im]]]},
///   "num_measurements": N,
///   "hamiltonian": {"h0": h0, "h_vector": [x, y, z]},    optional
///   "times": [t_1, ..., t_N],                           optional
///   "target_time": T,                                   default pi
///   "seed": 0, "restarts": 32, "tolerance": 1e-6,
///   "n_max": 50, "n_list": [50, 100, 200, 400], "curve_samples": 21,
///   "trials": 100, "grid_resolution": r                 optional
/// }
struct ExperimentConfig {
    std::optional<StokesVector> initial_stokes;
    std::optional<TargetOperator> target;
    std::optional<int> num_measurements;
    std::optional<Hamiltonian2> hamiltonian;
    std::optional<std::vector<double>> times;
    double target_time;
    uint64_t seed = 0;
    int restarts = 32;
    double tolerance = 1e-6;
    int n_max = 50;
    std::vector<int> n_list{50, 100, 200, 400};
    int curve_samples = 21;
    int trials = 100;
    std::optional<int> grid_resolution;

    ExperimentConfig();
};

/// Throws ConfigError on unknown keys, wrong types or values that violate a
/// module precondition.
ExperimentConfig parse_config(const nlohmann::json &doc);

/// Grid resolution used by the oracle command when none is configured;
/// nullopt when the grid is infeasible (N > 2).
std::optional<int> default_grid_resolution(int n);

/// Fully resolved config (defaults filled in) for echoing in results.
nlohmann::json config_to_json(const ExperimentConfig &config);

}  // namespace msteer::cli

#endif
