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

#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "idec/errors.hpp"
#include "idec/generator.hpp"
#include "idec/metrics.hpp"
#include "idec/montecarlo.hpp"
#include "idec/propagator.hpp"
#include "idec/sampling.hpp"
#include "output.hpp"

namespace idec::cli {

using nlohmann::json;

std::filesystem::path output_dir(const Scenario& scenario, const RunOptions& options) {
    return options.out_dir ? *options.out_dir : std::filesystem::path(scenario.outputs.directory);
}

namespace {

// Runs a command body, mapping failures onto exit codes.
template <class Body>
int guarded(std::ostream& log, Body&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
    } catch (const Error& e) {
        log << "error: " << e.what() << "\n";
    } catch (const std::filesystem::filesystem_error& e) {
        log << "i/o error: " << e.what() << "\n";
    }
    return kConfigError;
}

// gamma * sigma_time^2 * c^2 for sigma(t; theta) = sqrt(gamma) sigma_time c theta.
double global_rate(const NoiseModel& model) {
    const auto* linear = std::get_if<sigma_level::Linear>(&model.sigma_level);
    if (linear == nullptr) {
        throw ConfigError("$.noise.sigma_theta", "this generator needs a linear sigma_theta preset");
    }
    if (!model.time_independent()) {
        throw ConfigError("$.noise.sigma_time", "master equations need a time-independent sigma");
    }
    const double s = model.sigma_of_time(0.0);
    return model.gamma * s * s * linear->c * linear->c;
}

Superoperator make_generator(const Prepared& p, const std::string& name) {
    const NoiseModel& model = p.scenario.noise;
    if (name == "phase") return build_phase_destroying(p.spectrum, global_rate(model));
    if (name == "correlated") {
        double tau = 0.0;
        if (const auto* g = std::get_if<correlation::Gaussian>(&model.correlation)) {
            tau = g->tau;
        } else if (!std::holds_alternative<correlation::Uniform>(model.correlation)) {
            throw ConfigError("$.noise.correlation_g",
                              "the correlated generator needs a uniform or gaussian correlation");
        }
        return build_correlated(p.spectrum, global_rate(model), tau, model.drift);
    }
    if (name == "general") {
        try {
            return build_general(p.spectrum, lambda_rate_table(model, p.spectrum.levels), model.drift);
        } catch (const Error& e) {
            throw ConfigError("$.noise", e.what());
        }
    }
    throw ConfigError("--generator", "unknown generator '" + name + "' (phase | correlated | general)");
}

} // namespace

int cmd_evolve(const Scenario& scenario, const RunOptions& options, std::ostream& log) {
    return guarded(log, [&] {
        const Prepared p = prepare(scenario);
        std::vector<double> times = scenario.grid.times();
        std::vector<Matrix> states;
        double worst_trace = 1.0;
        double worst_time = 0.0;
        double min_eig = 0.0;
        bool dissipative = false;
        for (double t : times) {
            PropagatedState st = averaged_state(p.spectrum, scenario.noise, p.rho0, t);
            if (std::abs(st.trace - 1.0) > std::abs(worst_trace - 1.0)) {
                worst_trace = st.trace;
                worst_time = t;
            }
            min_eig = std::min(min_eig, st.min_eigenvalue);
            dissipative = dissipative || st.dissipative_trace_loss;
            states.push_back(std::move(st.rho));
        }
        if (dissipative) {
            log << "warning: DissipativeTraceLoss: lambda(t; theta, theta) != 0, trace reaches "
                << format_double(worst_trace) << " at t = " << format_double(worst_time) << "\n";
        }
        if (min_eig < -1e-10) {
            log << "warning: averaged state has eigenvalue " << format_double(min_eig) << "\n";
        }
        OutputSet files(output_dir(scenario, options));
        if (scenario.outputs.wants("csv")) {
            files.add("analytic.csv", state_csv(times, states, p.spectrum, p.hamiltonian.matrix()));
        }
        files.commit();
        return int{kOk};
    });
}

int cmd_integrate(const Scenario& scenario, const std::string& generator,
                  const RunOptions& options, std::ostream& log) {
    return guarded(log, [&] {
        const Prepared p = prepare(scenario);
        const Superoperator g = make_generator(p, generator);
        const EvolutionResult result = integrate(g, p.rho0, scenario.grid);
        const CpReport report = cp_report(g, result.times);

        json doc;
        doc["generator"] = to_string(g.kind);
        doc["completely_positive"] = report.completely_positive();
        json rows = json::array();
        for (const CpReportRow& r : report.rows) {
            rows.push_back({{"t", r.t},
                            {"min_choi_eigenvalue", r.min_choi_eigenvalue},
                            {"trace_defect", r.trace_defect},
                            {"unitality_defect", r.unitality_defect},
                            {"semigroup_defect", r.semigroup_defect}});
        }
        doc["checkpoints"] = std::move(rows);

        OutputSet files(output_dir(scenario, options));
        if (scenario.outputs.wants("csv")) {
            files.add("me.csv", state_csv(result.times, result.states, p.spectrum, p.hamiltonian.matrix()));
        }
        if (scenario.outputs.wants("json")) files.add("cp_report.json", doc.dump(2) + "\n");
        files.commit();
        if (!report.completely_positive()) log << "warning: generator is not completely positive\n";
        return int{kOk};
    });
}

int cmd_sample(const Scenario& scenario, const RunOptions& options, std::ostream& log) {
    return guarded(log, [&] {
        const Prepared p = prepare(scenario);
        const std::uint64_t seed = options.seed.value_or(scenario.montecarlo.seed);
        const std::size_t n_traj = scenario.montecarlo.n_traj;
        EnsembleOptions ens;
        ens.threads = options.threads;
        const EnsembleResult result =
            run_ensemble(p.spectrum, scenario.noise, p.rho0, scenario.grid, n_traj, seed, ens);

        std::vector<Matrix> analytic;
        for (double t : result.times) {
            analytic.push_back(averaged_state(p.spectrum, scenario.noise, p.rho0, t).rho);
        }
        const ComparisonReport report = compare_to_analytic(result, analytic);

        json doc;
        doc["n_traj"] = n_traj;
        doc["seed"] = seed;
        doc["max_z"] = report.max_z;
        doc["fraction_above_3"] = report.fraction_above_3;
        doc["thresholds"] = {{"max_z", ComparisonReport::kMaxZ},
                             {"z3_fraction", ComparisonReport::kZ3Fraction}};
        json points = json::array();
        for (const ComparisonPoint& pt : report.points) {
            points.push_back({{"t", pt.t},
                              {"max_abs_deviation", pt.max_abs_deviation},
                              {"max_z", pt.max_z},
                              {"entries", pt.entries},
                              {"entries_above_3", pt.entries_above_3}});
        }
        doc["points"] = std::move(points);
        doc["insufficient_statistics"] = !report.pass.has_value();
        if (report.pass) doc["pass"] = *report.pass;

        OutputSet files(output_dir(scenario, options));
        if (scenario.outputs.wants("csv")) {
            files.add("mc_mean.csv",
                      state_csv(result.times, result.mean, p.spectrum, p.hamiltonian.matrix()));
            files.add("mc_stderr.csv",
                      stderr_csv(result.times, result.std_error_re, result.std_error_im));
        }
        if (scenario.outputs.wants("json")) files.add("comparison.json", doc.dump(2) + "\n");
        files.commit();

        if (!report.pass) {
            log << "note: fewer than two trajectories, statistical comparison skipped\n";
            return int{kOk};
        }
        if (!*report.pass) {
            log << "FAIL: ensemble disagrees with the analytic state (max z = "
                << format_double(report.max_z) << ")\n";
            return int{kFailure};
        }
        return int{kOk};
    });
}

int cmd_moments(const Scenario& scenario, double theta, double theta_prime, int max_order,
                const RunOptions& options, std::ostream& log) {
    return guarded(log, [&] {
        if (max_order < 2) throw ConfigError("--max-order", "must be >= 2");
        if (scenario.montecarlo.n_traj < 1000) {
            throw ConfigError("$.montecarlo.n_traj", "moment estimates need at least 1000 trajectories");
        }
        const std::uint64_t seed = options.seed.value_or(scenario.montecarlo.seed);
        const std::vector<MomentRow> rows =
            moment_report(scenario.noise, scenario.grid.t_end, theta, theta_prime,
                          scenario.montecarlo.n_traj, seed, max_order);

        std::ostringstream csv;
        csv << "n,empirical,predicted,stderr\n";
        bool ok = true;
        for (const MomentRow& r : rows) {
            if (r.order < 2) continue;
            csv << r.order << "," << format_double(r.empirical) << "," << format_double(r.predicted)
                << "," << format_double(r.std_error) << "\n";
            const double dev = std::abs(r.empirical - r.predicted);
            if (r.std_error > 0.0 ? dev > 3.0 * r.std_error : dev > 1e-12) ok = false;
        }
        OutputSet files(output_dir(scenario, options));
        if (scenario.outputs.wants("csv")) files.add("moments.csv", csv.str());
        files.commit();
        if (!ok) {
            log << "FAIL: an empirical moment is more than 3 standard errors from its prediction\n";
            return int{kFailure};
        }
        return int{kOk};
    });
}

} // namespace idec::cli
