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

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "commands.hpp"
#include "idec/errors.hpp"
#include "idec/generator.hpp"
#include "idec/metrics.hpp"
#include "idec/montecarlo.hpp"
#include "idec/propagator.hpp"
#include "idec/sampling.hpp"
#include "output.hpp"

namespace idec::cli {

namespace {

enum class Status { Pass, Fail, Skip };

struct Outcome {
    Status status = Status::Pass;
    std::string detail;
};

Outcome pass(std::string detail) { return {Status::Pass, std::move(detail)}; }
Outcome fail(std::string detail) { return {Status::Fail, std::move(detail)}; }
Outcome skip(std::string detail) { return {Status::Skip, std::move(detail)}; }

Outcome bound(double value, double limit, const std::string& what) {
    std::ostringstream os;
    os << what << " = " << std::setprecision(3) << value << " (limit " << limit << ")";
    return value <= limit ? pass(os.str()) : fail(os.str());
}

struct Context {
    const Prepared& p;
    const VerifyOptions& options;
};

struct Check {
    const char* name;
    std::function<Outcome(const Context&)> run;
};

constexpr std::size_t kMaxVerifyTrajectories = 20000;

bool uses_global_form(const NoiseModel& m) {
    return std::holds_alternative<sigma_level::Linear>(m.sigma_level) &&
           std::holds_alternative<correlation::Uniform>(m.correlation) &&
           std::holds_alternative<drift::Identity>(m.drift) && m.brownian();
}

std::vector<Superoperator> scenario_generators(const Prepared& p) {
    const NoiseModel& m = p.scenario.noise;
    std::vector<Superoperator> out;
    if (!m.time_independent()) return out;
    out.push_back(build_general(p.spectrum, lambda_rate_table(m, p.spectrum.levels), m.drift));
    if (m.brownian()) {
        if (const auto* lin = std::get_if<sigma_level::Linear>(&m.sigma_level)) {
            const double s = m.sigma_of_time(0.0);
            const double rate = m.gamma * s * s * lin->c * lin->c;
            if (std::holds_alternative<correlation::Uniform>(m.correlation)) {
                out.push_back(build_phase_destroying(p.spectrum, rate));
                out.push_back(build_correlated(p.spectrum, rate, 0.0, m.drift));
            } else if (const auto* g = std::get_if<correlation::Gaussian>(&m.correlation)) {
                out.push_back(build_correlated(p.spectrum, rate, g->tau, m.drift));
            }
        }
    }
    return out;
}

std::vector<Matrix> analytic_series(const Prepared& p, const NoiseModel& model) {
    std::vector<Matrix> out;
    for (double t : p.scenario.grid.times()) out.push_back(averaged_state(p.spectrum, model, p.rho0, t).rho);
    return out;
}

Outcome ensemble_agreement(const Context& c, double gamma_factor) {
    const NoiseModel& m = c.p.scenario.noise;
    if (!m.brownian()) return skip("direct_lambda has no stochastic realization");
    const std::size_t n = std::min(c.p.scenario.montecarlo.n_traj, kMaxVerifyTrajectories);
    EnsembleOptions opts;
    opts.threads = c.options.threads;
    const EnsembleResult ens =
        run_ensemble(c.p.spectrum, m, c.p.rho0, c.p.scenario.grid, n, c.p.scenario.montecarlo.seed, opts);
    NoiseModel reference = m;
    reference.gamma *= gamma_factor;
    const ComparisonReport report = compare_to_analytic(ens, analytic_series(c.p, reference));
    std::ostringstream os;
    os << "n_traj " << n << ", max z " << std::setprecision(3) << report.max_z << ", above-3 fraction "
       << report.fraction_above_3;
    if (!report.pass) return skip(os.str());
    return *report.pass ? pass(os.str()) : fail(os.str());
}

const std::vector<Check>& checks() {
    static const std::vector<Check> all = {
        {"operators.spectral_identities",
         [](const Context& c) {
             const SpectralDecomposition& s = c.p.spectrum;
             const Eigen::Index d = s.dim();
             Matrix sum = Matrix::Zero(d, d);
             double ortho = 0.0;
             for (std::size_t j = 0; j < s.projectors.size(); ++j) {
                 sum += s.projectors[j];
                 for (std::size_t k = 0; k < s.projectors.size(); ++k) {
                     const Matrix expect = j == k ? s.projectors[j] : Matrix::Zero(d, d);
                     ortho = std::max(ortho, max_abs_entry(s.projectors[j] * s.projectors[k] - expect));
                 }
             }
             const double complete = max_abs_entry(sum - Matrix::Identity(d, d));
             const double recon = max_abs_entry(s.reconstruct() - c.p.hamiltonian.matrix());
             return bound(std::max({complete, ortho, recon}), 1e-10, "max identity residual");
         }},
        {"operators.basis_round_trip",
         [](const Context& c) {
             const Matrix& rho = c.p.rho0.matrix();
             const Matrix energy = to_energy_basis(c.p.rho0, c.p.spectrum);
             const double round = max_abs_entry(from_energy_basis(energy, c.p.spectrum) - rho);
             Eigen::SelfAdjointEigenSolver<Matrix> a(rho, Eigen::EigenvaluesOnly);
             Eigen::SelfAdjointEigenSolver<Matrix> b(0.5 * (energy + energy.adjoint()), Eigen::EigenvaluesOnly);
             const double shift = (a.eigenvalues() - b.eigenvalues()).cwiseAbs().maxCoeff();
             if (round > 1e-12) return bound(round, 1e-12, "round-trip error");
             return bound(shift, 1e-10, "spectrum change");
         }},
        {"noise.kernel_properties",
         [](const Context& c) {
             const NoiseModel& m = c.p.scenario.noise;
             if (!m.brownian()) return skip("direct_lambda kernel");
             const auto& lv = c.p.spectrum.levels;
             double worst = 0.0;
             for (double t : c.p.scenario.grid.times()) {
                 for (double a : lv) {
                     worst = std::max(worst, std::abs(lambda_pair(m, t, a, a)));
                     for (double b : lv) {
                         worst = std::max(worst, std::max(0.0, -eta(m, t, a, b)));
                         worst = std::max(worst, std::max(0.0, -lambda_pair(m, t, a, b)));
                         worst = std::max(worst, std::abs(lambda_pair(m, t, a, b) - lambda_pair(m, t, b, a)));
                     }
                 }
             }
             return bound(worst, 0.0, "worst sign/symmetry/diagonal violation");
         }},
        {"noise.characteristic_function",
         [](const Context& c) {
             const NoiseModel& m = c.p.scenario.noise;
             const auto& lv = c.p.spectrum.levels;
             if (!m.brownian()) return skip("direct_lambda kernel");
             if (lv.size() < 2) return skip("single level");
             const double t = c.p.scenario.grid.t_end;
             const std::vector<double> pair{lv.front(), lv.back()};
             const std::size_t n = 10000;
             const ChiPaths paths = sample_chi_paths(m, pair, c.p.scenario.grid, c.p.scenario.montecarlo.seed, n);
             double sum_re = 0.0, sum_im = 0.0, sq_re = 0.0, sq_im = 0.0;
             const double drift = (m.h(pair[0]) - m.h(pair[1])) * t;
             for (const RealMatrix& chi : paths.paths) {
                 const Eigen::Index last = chi.rows() - 1;
                 const double x = chi(last, 0) - chi(last, 1) - drift;
                 sum_re += std::cos(x);
                 sum_im += -std::sin(x);
                 sq_re += std::cos(x) * std::cos(x);
                 sq_im += std::sin(x) * std::sin(x);
             }
             const double nn = static_cast<double>(n);
             const double mean_re = sum_re / nn, mean_im = sum_im / nn;
             const double se_re = std::sqrt(std::max(0.0, sq_re / nn - mean_re * mean_re) / nn);
             const double se_im = std::sqrt(std::max(0.0, sq_im / nn - mean_im * mean_im) / nn);
             const double expect = std::exp(-0.5 * lambda_pair(m, t, pair[0], pair[1]));
             auto z = [](double dev, double se) { return se > 0 ? dev / se : (dev < 1e-12 ? 0.0 : 1e300); };
             const double zmax = std::max(z(std::abs(mean_re - expect), se_re), z(std::abs(mean_im), se_im));
             return bound(zmax, 3.0, "z-score of E[exp(-iX)] vs exp(-lambda/2)");
         }},
        {"noise.reproducibility",
         [](const Context& c) {
             const NoiseModel& m = c.p.scenario.noise;
             if (!m.brownian()) return skip("direct_lambda kernel");
             const ChiSampler sampler(m, c.p.spectrum.levels, c.p.scenario.grid);
             RealMatrix a, b;
             bool same = true;
             for (std::uint64_t j = 0; j < 8; ++j) {
                 sampler.sample(7, 7 - j, a);
                 sampler.sample(7, 7 - j, b);
                 const RealMatrix c2 = sampler.integrate(sample_brownian_trajectory(sampler.factor(), c.p.scenario.grid, 7, 7 - j));
                 same = same && a == b && a == c2;
             }
             return same ? pass("bit-identical paths") : fail("paths differ between repeated draws");
         }},
        {"propagator.state_validity",
         [](const Context& c) {
             const NoiseModel& m = c.p.scenario.noise;
             double herm = 0.0, trace = 0.0, neg = 0.0;
             for (double t : c.p.scenario.grid.times()) {
                 const PropagatedState st = averaged_state(c.p.spectrum, m, c.p.rho0, t);
                 herm = std::max(herm, hermiticity_defect(st.rho));
                 trace = std::max(trace, std::abs(st.trace - 1.0));
                 neg = std::max(neg, -st.min_eigenvalue);
             }
             if (herm > 1e-12) return bound(herm, 1e-12, "hermiticity defect");
             if (neg > 1e-10) return bound(-neg, -1e-10, "min eigenvalue");
             if (!m.brownian()) {
                 std::ostringstream os;
                 os << "dissipative: trace drift " << std::setprecision(3) << trace << " reported";
                 return pass(os.str());
             }
             return bound(trace, 1e-12, "trace defect");
         }},
        {"propagator.global_equivalence",
         [](const Context& c) {
             const NoiseModel& m = c.p.scenario.noise;
             if (!uses_global_form(m)) return skip("needs linear sigma, uniform g, identity h");
             const double scale = std::get<sigma_level::Linear>(m.sigma_level).c;
             NoiseModel profile = m;
             profile.gamma *= scale * scale;
             double worst = 0.0;
             for (double t : c.p.scenario.grid.times()) {
                 worst = std::max(worst, max_abs_entry(averaged_state(c.p.spectrum, m, c.p.rho0, t).rho -
                                                       averaged_state_global(c.p.spectrum, profile, c.p.rho0, t).rho));
             }
             return bound(worst, 1e-12, "max entry difference");
         }},
        {"propagator.coherence_monotone",
         [](const Context& c) {
             const NoiseModel& m = c.p.scenario.noise;
             if (!m.brownian()) return skip("direct_lambda kernel");
             double worst = 0.0;
             RealMatrix prev;
             double prev_purity = 2.0;
             double purity_rise = 0.0;
             for (double t : c.p.scenario.grid.times()) {
                 const PropagatedState st = averaged_state(c.p.spectrum, m, c.p.rho0, t);
                 const RealMatrix mag = to_energy_basis(st.rho, c.p.spectrum).cwiseAbs();
                 if (prev.size() > 0) worst = std::max(worst, (mag - prev).maxCoeff());
                 const double pur = purity(st.rho);
                 purity_rise = std::max(purity_rise, pur - prev_purity);
                 prev = mag;
                 prev_purity = pur;
             }
             if (worst > 1e-12) return bound(worst, 1e-12, "largest coherence increase");
             return bound(purity_rise, 1e-12, "largest purity increase");
         }},
        {"propagator.markovianity",
         [](const Context& c) {
             const NoiseModel& m = c.p.scenario.noise;
             if (m.time_independent()) {
                 const double t = 0.5 * c.p.scenario.grid.t_end;
                 return bound(semigroup_defect(c.p.spectrum, m, c.p.rho0, t, t), 1e-12, "semigroup defect");
             }
             const auto& pw = std::get<sigma_time::PiecewiseConstant>(m.sigma_time);
             const double bp = pw.breakpoints.front();
             const double defect = semigroup_defect(c.p.spectrum, m, c.p.rho0, bp, bp);
             std::ostringstream os;
             os << "nonmarkovian witness defect " << std::setprecision(3) << defect;
             return defect > 1e-12 ? pass(os.str()) : fail(os.str());
         }},
        {"generator.rk4_vs_exact",
         [](const Context& c) {
             const auto gens = scenario_generators(c.p);
             if (gens.empty()) return skip("time-dependent kernel has no fixed generator");
             double worst = 0.0;
             for (const Superoperator& g : gens) {
                 const EvolutionResult rk = integrate(g, c.p.rho0, c.p.scenario.grid);
                 const EvolutionResult ex = evolve_exact(g, c.p.rho0, c.p.scenario.grid);
                 for (std::size_t i = 0; i < rk.states.size(); ++i) {
                     worst = std::max(worst, max_abs_entry(rk.states[i] - ex.states[i]));
                 }
             }
             return bound(worst, 1e-8, "max entry error");
         }},
        {"generator.complete_positivity",
         [](const Context& c) {
             if (!c.p.scenario.noise.brownian()) return skip("direct_lambda tables need not be CP");
             const auto gens = scenario_generators(c.p);
             if (gens.empty()) return skip("time-dependent kernel has no fixed generator");
             double worst = 0.0;
             for (const Superoperator& g : gens) {
                 for (const CpReportRow& r : cp_report(g, c.p.scenario.grid.times()).rows) {
                     worst = std::max(worst, -r.min_choi_eigenvalue);
                 }
             }
             return bound(worst, 1e-10, "most negative Choi eigenvalue (negated)");
         }},
        {"generator.trace_unitality_semigroup",
         [](const Context& c) {
             const auto gens = scenario_generators(c.p);
             if (gens.empty()) return skip("time-dependent kernel has no fixed generator");
             double defect = 0.0, semigroup = 0.0;
             for (const Superoperator& g : gens) {
                 for (const CpReportRow& r : cp_report(g, c.p.scenario.grid.times()).rows) {
                     defect = std::max({defect, r.trace_defect, r.unitality_defect});
                     semigroup = std::max(semigroup, r.semigroup_defect);
                 }
             }
             if (semigroup > 1e-10) return bound(semigroup, 1e-10, "semigroup defect");
             if (!c.p.scenario.noise.brownian()) {
                 std::ostringstream os;
                 os << "dissipative: trace defect " << std::setprecision(3) << defect << " reported";
                 return pass(os.str());
             }
             return bound(defect, 1e-10, "trace/unitality defect");
         }},
        {"generator.tau_continuity",
         [](const Context& c) {
             const Superoperator base = build_phase_destroying(c.p.spectrum, 1.0);
             const Superoperator near = build_correlated(c.p.spectrum, 1.0, 1e-4);
             double worst = 0.0;
             for (Eigen::Index i = 0; i < base.rates.size(); ++i) {
                 const double diff = std::abs(near.rates(i) - base.rates(i));
                 const double ref = std::abs(base.rates(i));
                 worst = std::max(worst, ref > 0.0 ? diff / ref : diff);
             }
             return bound(worst, 1e-6, "relative rate difference at tau = 1e-4");
         }},
        {"montecarlo.unitarity",
         [](const Context& c) {
             const NoiseModel& m = c.p.scenario.noise;
             if (!m.brownian()) return skip("direct_lambda kernel");
             const ChiSampler sampler(m, c.p.spectrum.levels, c.p.scenario.grid);
             RealMatrix chi;
             double worst = 0.0;
             const Eigen::Index d = c.p.spectrum.dim();
             for (std::uint64_t j = 0; j < 16; ++j) {
                 sampler.sample(c.p.scenario.montecarlo.seed, j, chi);
                 const Matrix u = random_unitary(c.p.spectrum, chi.row(chi.rows() - 1).transpose());
                 worst = std::max(worst, max_abs_entry(u * u.adjoint() - Matrix::Identity(d, d)));
             }
             return bound(worst, 1e-12, "unitarity defect");
         }},
        {"montecarlo.analytic_agreement", [](const Context& c) { return ensemble_agreement(c, 1.0); }},
        {"montecarlo.thread_determinism",
         [](const Context& c) {
             const NoiseModel& m = c.p.scenario.noise;
             if (!m.brownian()) return skip("direct_lambda kernel");
             EnsembleOptions one, many;
             one.threads = 1;
             many.threads = 4;
             one.block_size = many.block_size = 64;
             const auto a = run_ensemble(c.p.spectrum, m, c.p.rho0, c.p.scenario.grid, 1000, 3, one);
             const auto b = run_ensemble(c.p.spectrum, m, c.p.rho0, c.p.scenario.grid, 1000, 3, many);
             bool same = true;
             for (std::size_t i = 0; i < a.mean.size(); ++i) {
                 same = same && a.mean[i] == b.mean[i] && a.std_error_re[i] == b.std_error_re[i] &&
                        a.std_error_im[i] == b.std_error_im[i];
             }
             return same ? pass("1 and 4 workers bit-identical") : fail("results depend on worker count");
         }},
        {"metrics.energy_balance",
         [](const Context& c) {
             const NoiseModel& m = c.p.scenario.noise;
             const Matrix& h = c.p.hamiltonian.matrix();
             const Matrix energy0 = to_energy_basis(c.p.rho0, c.p.spectrum);
             double worst = 0.0;
             for (double t : c.p.scenario.grid.times()) {
                 const Matrix rho = averaged_state(c.p.spectrum, m, c.p.rho0, t).rho;
                 const RealMatrix lam = lambda_levels(m, c.p.spectrum.levels, t);
                 double expect = 0.0;
                 for (Eigen::Index k = 0; k < c.p.spectrum.dim(); ++k) {
                     const auto lvl = static_cast<Eigen::Index>(c.p.spectrum.level_of[static_cast<std::size_t>(k)]);
                     expect += c.p.spectrum.eigenvalues[static_cast<std::size_t>(k)] *
                               std::exp(-0.5 * lam(lvl, lvl)) * energy0(k, k).real();
                 }
                 worst = std::max(worst, std::abs(energy_expectation(rho, h) - expect));
             }
             return bound(worst, 1e-10, "energy deviation from closed form");
         }},
        {"cli.config_round_trip",
         [](const Context& c) {
             const Scenario again = parse_scenario(to_json(c.p.scenario));
             return equivalent(again, c.p.scenario) ? pass("identical after re-emit")
                                                    : fail("scenario changed after re-emit");
         }},
    };
    return all;
}

struct Row {
    std::string check;
    std::string scenario;
    Outcome outcome;
};

const char* label(Status s) {
    switch (s) {
        case Status::Pass: return "PASS";
        case Status::Fail: return "FAIL";
        case Status::Skip: return "skip";
    }
    return "?";
}

} // namespace

std::vector<std::string> verify_check_names() {
    std::vector<std::string> names;
    for (const Check& c : checks()) names.emplace_back(c.name);
    return names;
}

int cmd_verify(const VerifyOptions& options, std::ostream& out) {
    if (options.list_only) {
        for (const auto& name : verify_check_names()) out << name << "\n";
        return kOk;
    }
    std::vector<std::filesystem::path> configs = options.configs;
    if (configs.empty()) {
        if (!std::filesystem::is_directory(options.scenario_dir)) {
            out << "config error: scenario directory " << options.scenario_dir << " not found\n";
            return kConfigError;
        }
        for (const auto& entry : std::filesystem::directory_iterator(options.scenario_dir)) {
            if (entry.path().extension() == ".json") configs.push_back(entry.path());
        }
        std::sort(configs.begin(), configs.end());
    }

    std::vector<Prepared> prepared;
    try {
        for (const auto& path : configs) prepared.push_back(prepare(load_scenario(path)));
    } catch (const ConfigError& e) {
        out << "config error: " << e.what() << "\n";
        return kConfigError;
    }

    std::vector<Row> rows;
    for (const Prepared& p : prepared) {
        const Context ctx{p, options};
        for (const Check& check : checks()) {
            Outcome o;
            try {
                o = check.run(ctx);
            } catch (const std::exception& e) {
                o = fail(std::string("threw: ") + e.what());
            }
            rows.push_back({check.name, p.scenario.name, o});
        }
        if (options.inject_wrong_gamma) {
            Outcome o = ensemble_agreement(ctx, 2.0);
            if (o.status == Status::Skip) continue;
            rows.push_back({"fixture.wrong_gamma_agreement", p.scenario.name, o});
        }
    }

    std::size_t width_check = 5, width_scenario = 8;
    for (const Row& r : rows) {
        width_check = std::max(width_check, r.check.size());
        width_scenario = std::max(width_scenario, r.scenario.size());
    }
    std::size_t failures = 0, passes = 0, skips = 0;
    out << std::left << std::setw(static_cast<int>(width_check)) << "check" << "  "
        << std::setw(static_cast<int>(width_scenario)) << "scenario" << "  status  detail\n";
    for (const Row& r : rows) {
        out << std::left << std::setw(static_cast<int>(width_check)) << r.check << "  "
            << std::setw(static_cast<int>(width_scenario)) << r.scenario << "  "
            << std::setw(6) << label(r.outcome.status) << "  " << r.outcome.detail << "\n";
        if (r.outcome.status == Status::Fail) ++failures;
        if (r.outcome.status == Status::Pass) ++passes;
        if (r.outcome.status == Status::Skip) ++skips;
    }
    out << "\n" << passes << " passed, " << failures << " failed, " << skips << " skipped\n";
    if (failures > 0) {
        out << "failures:\n";
        for (const Row& r : rows) {
            if (r.outcome.status == Status::Fail) out << "  " << r.check << " [" << r.scenario << "]\n";
        }
        return kFailure;
    }
    return kOk;
}

} // namespace idec::cli
