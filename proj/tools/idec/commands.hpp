// Copyright 2026 The idec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "scenario.hpp"

namespace idec::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kConfigError = 2 };

struct RunOptions {
    // Overrides the scenario's outputs.directory when set.
    std::optional<std::filesystem::path> out_dir;
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
};

std::filesystem::path output_dir(const Scenario& scenario, const RunOptions& options);

// analytic.csv: averaged state on the grid plus purity, coherence, energy, trace.
int cmd_evolve(const Scenario& scenario, const RunOptions& options, std::ostream& log);

// me.csv and cp_report.json for the chosen generator: "phase", "correlated", "general".
int cmd_integrate(const Scenario& scenario, const std::string& generator,
                  const RunOptions& options, std::ostream& log);

// mc_mean.csv, mc_stderr.csv and comparison.json. Exit 1 when the z-test fails.
int cmd_sample(const Scenario& scenario, const RunOptions& options, std::ostream& log);

// moments.csv for X_t between two levels at t = grid end. Exit 1 when a
// moment misses its prediction by more than 3 standard errors.
int cmd_moments(const Scenario& scenario, double theta, double theta_prime, int max_order,
                const RunOptions& options, std::ostream& log);

struct VerifyOptions {
    // Scenarios to check; empty runs the bundled reference set.
    std::vector<std::filesystem::path> configs;
    std::filesystem::path scenario_dir;
    bool list_only = false;
    // Adds a fixture comparing the ensemble against the analytic state at
    // twice the true gamma; the suite must then fail.
    bool inject_wrong_gamma = false;
    unsigned threads = 1;
};

std::vector<std::string> verify_check_names();

int cmd_verify(const VerifyOptions& options, std::ostream& out);

} // namespace idec::cli
