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

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "msteer/cli/commands.h"
#include "msteer/error.h"

namespace msteer::cli {

namespace {

nlohmann::json read_config(const std::string &path, std::istream &in) {
    std::string text;
    if (path.empty()) {
        return nullptr;
    }
    if (path == "-") {
        text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    } else {
        std::ifstream file(path);
        if (!file) {
            throw ConfigError("--config", "cannot open '" + path + "'");
        }
        text.assign(std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>());
    }
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        return nullptr;
    }
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
    }
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::istream &in, std::ostream &out, std::ostream &err) {
    CLI::App app{"Optimal non-selective measurement sequences for a qubit"};
    std::string command;
    std::string config_path;
    std::string format;
    std::string out_path;
    std::optional<int64_t> seed;
    std::optional<int> n_max;
    std::optional<int> trials;

    std::string names;
    for (const auto &n : command_names()) {
        names += (names.empty() ? "" : "|") + n;
    }
    app.add_option("command", command, names)->required()->check(CLI::IsMember(command_names()));
    app.add_option("--config", config_path, "JSON config file, '-' for standard input");
    app.add_option("--format", format, "csv or json (default: json for plan/oracle, csv otherwise)")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out_path, "output file (default: standard output)");
    app.add_option("--seed", seed, "RNG seed (overrides config)")->check(CLI::NonNegativeNumber);
    app.add_option("--n-max", n_max, "largest N for sweep (overrides config)")->check(CLI::PositiveNumber);
    app.add_option("--trials", trials, "random trials for ancilla-check (overrides config)")
        ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        ExperimentConfig config = parse_config(read_config(config_path, in));
        if (seed) {
            config.seed = static_cast<uint64_t>(*seed);
        }
        if (n_max) {
            config.n_max = *n_max;
        }
        if (trials) {
            config.trials = *trials;
        }
        ResultRecord record = run_command(command, config);

        OutputFormat fmt = default_format(command);
        if (!format.empty()) {
            fmt = format == "json" ? OutputFormat::Json : OutputFormat::Csv;
        }
        std::ostringstream buffer;
        if (fmt == OutputFormat::Json) {
            write_json(record, buffer);
        } else {
            write_csv(record, buffer);
        }
        if (out_path.empty()) {
            out << buffer.str();
        } else {
            std::ofstream file(out_path, std::ios::binary);
            if (!file || !(file << buffer.str())) {
                err << "error: cannot write '" << out_path << "'\n";
                return 2;
            }
        }
        return 0;
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return e.kind() == ErrorKind::InvariantViolation ? 3 : 2;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace msteer::cli
