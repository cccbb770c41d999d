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

#ifndef MSTEER_CLI_COMMANDS_H
#define MSTEER_CLI_COMMANDS_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "msteer/cli/config.h"

namespace msteer::cli {

using Cell = std::variant<std::monostate, int64_t, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// Output of one command. `summary` holds scalar results, `table` the tabular
/// part, `outputs` the structured form used by the JSON writer.
struct ResultRecord {
    std::string command;
    nlohmann::json config;
    nlohmann::json summary = nlohmann::json::object();
    Table table;
    nlohmann::json outputs = nlohmann::json::object();
    double wall_time_s = 0.0;
};

enum class OutputFormat { Csv, Json };

ResultRecord cmd_plan(const ExperimentConfig &config);
ResultRecord cmd_simulate(const ExperimentConfig &config);
ResultRecord cmd_sweep(const ExperimentConfig &config);
ResultRecord cmd_oracle(const ExperimentConfig &config);
ResultRecord cmd_antizeno(const ExperimentConfig &config);
ResultRecord cmd_ancilla_check(const ExperimentConfig &config);

/// Commands in the order they are listed by --help.
const std::vector<std::string> &command_names();
/// Runs the named command and stamps wall time. Throws ConfigError for an unknown name.
ResultRecord run_command(const std::string &name, const ExperimentConfig &config);
/// csv for tabular commands, json for plan and oracle.
OutputFormat default_format(const std::string &command);

/// 17 significant digits, '.' decimal point.
std::string format_double(double x);
void write_csv(const ResultRecord &record, std::ostream &out);
void write_json(const ResultRecord &record, std::ostream &out);

/// Full command-line entry point; returns the process exit code
/// (0 success, 2 configuration error, 3 invariant violation).
int run_cli(int argc, const char *const *argv, std::istream &in, std::ostream &out, std::ostream &err);

}  // namespace msteer::cli

#endif
