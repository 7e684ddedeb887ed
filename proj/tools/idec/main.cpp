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

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"

#ifndef IDEC_SCENARIO_DIR
#define IDEC_SCENARIO_DIR "scenarios"
#endif

using namespace idec::cli;

int main(int argc, char** argv) {
    CLI::App app{"Random-time intrinsic decoherence: analytic averages, master equations, Monte Carlo"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    unsigned threads = 1;
    app.add_option("--config", config_path, "Scenario config (JSON)");
    app.add_option("--out", out_dir, "Output directory (overrides outputs.directory)");
    app.add_option("--seed", seed, "Master seed (overrides montecarlo.seed)");
    app.add_option("--threads", threads, "Worker cap for Monte Carlo sampling")->check(CLI::PositiveNumber);

    auto* evolve = app.add_subcommand("evolve", "Write the averaged state to analytic.csv");
    auto* integrate = app.add_subcommand("integrate", "Integrate a master equation to me.csv + cp_report.json");
    std::string generator = "phase";
    integrate->add_option("--generator", generator, "phase | correlated | general")
        ->check(CLI::IsMember({"phase", "correlated", "general"}));
    auto* sample = app.add_subcommand("sample", "Monte Carlo ensemble vs analytic state");
    auto* moments = app.add_subcommand("moments", "Moments of X_t between two levels");
    double theta = 0.0;
    double theta_prime = 0.0;
    int max_order = 4;
    moments->add_option("--theta", theta, "First level")->required();
    moments->add_option("--theta-prime", theta_prime, "Second level")->required();
    moments->add_option("--max-order", max_order, "Highest moment order (default 4)");
    auto* verify = app.add_subcommand("verify", "Run the invariant suite on reference scenarios");
    bool list = false;
    bool inject = false;
    std::string scenario_dir = IDEC_SCENARIO_DIR;
    verify->add_flag("--list", list, "Print check names and exit");
    verify->add_option("--scenarios", scenario_dir, "Directory of reference scenarios");
    verify->add_flag("--inject-wrong-gamma", inject, "Add a deliberately wrong-gamma fixture");

    for (auto* sub : {evolve, integrate, sample, moments, verify}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    if (verify->parsed()) {
        VerifyOptions opts;
        if (!config_path.empty()) opts.configs.push_back(config_path);
        opts.scenario_dir = scenario_dir;
        opts.list_only = list;
        opts.inject_wrong_gamma = inject;
        opts.threads = threads;
        return cmd_verify(opts, std::cout);
    }

    if (config_path.empty()) {
        std::cerr << "config error: --config PATH is required\n";
        return kConfigError;
    }
    Scenario scenario;
    try {
        scenario = load_scenario(config_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    }
    RunOptions run;
    if (!out_dir.empty()) run.out_dir = out_dir;
    run.seed = seed;
    run.threads = threads;

    if (evolve->parsed()) return cmd_evolve(scenario, run, std::cerr);
    if (integrate->parsed()) return cmd_integrate(scenario, generator, run, std::cerr);
    if (sample->parsed()) return cmd_sample(scenario, run, std::cerr);
    if (moments->parsed()) return cmd_moments(scenario, theta, theta_prime, max_order, run, std::cerr);
    return kConfigError;
}
