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

#include "idec/generator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "idec/errors.hpp"

namespace idec {

const char* to_string(GeneratorKind kind) {
    switch (kind) {
        case GeneratorKind::PhaseDestroying: return "phase-destroying";
        case GeneratorKind::Correlated: return "correlated-tau";
        case GeneratorKind::General: return "general-lambda";
    }
    return "unknown";
}

const char* to_string(Provenance p) {
    switch (p) {
        case Provenance::Analytic: return "analytic";
        case Provenance::MasterEquation: return "master-equation";
        case Provenance::MonteCarlo: return "monte-carlo";
    }
    return "unknown";
}

namespace {

std::vector<double> drift_values(const SpectralDecomposition& s, const DriftPreset& preset) {
    NoiseModel model;
    model.drift = preset;
    std::vector<double> out(s.eigenvalues.size());
    std::transform(s.eigenvalues.begin(), s.eigenvalues.end(), out.begin(),
                   [&](double theta) { return model.h(theta); });
    return out;
}

} // namespace

Matrix Superoperator::apply_energy(const Matrix& rho_energy) const {
    return rates.cwiseProduct(rho_energy);
}

Matrix Superoperator::propagator_factors(double t) const {
    return (rates * t).array().exp().matrix();
}

Superoperator build_phase_destroying(const SpectralDecomposition& s, double gamma) {
    if (!(gamma >= 0.0)) throw Error(ErrorKind::InvalidArgument, "gamma must be >= 0");
    const Eigen::Index d = s.dim();
    Superoperator g{GeneratorKind::PhaseDestroying, s, Matrix(d, d)};
    for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = 0; l < d; ++l) {
            const double gap =
                s.eigenvalues[static_cast<std::size_t>(k)] - s.eigenvalues[static_cast<std::size_t>(l)];
            g.rates(k, l) = Complex(-0.5 * gamma * gap * gap, -gap);
        }
    }
    return g;
}

Superoperator build_correlated(const SpectralDecomposition& s, double gamma, double tau,
                               const DriftPreset& h) {
    if (!(gamma >= 0.0)) throw Error(ErrorKind::InvalidArgument, "gamma must be >= 0");
    if (!(tau >= 0.0)) throw Error(ErrorKind::InvalidArgument, "tau must be >= 0");
    const std::vector<double> hv = drift_values(s, h);
    const Eigen::Index d = s.dim();
    Superoperator g{GeneratorKind::Correlated, s, Matrix(d, d)};
    for (Eigen::Index k = 0; k < d; ++k) {
        const double a = s.eigenvalues[static_cast<std::size_t>(k)];
        for (Eigen::Index l = 0; l < d; ++l) {
            const double b = s.eigenvalues[static_cast<std::size_t>(l)];
            const double corr = k == l ? 1.0 : std::exp(-tau * tau * (a - b) * (a - b));
            const double damping = a * a + b * b - 2.0 * a * b * corr;
            g.rates(k, l) = Complex(-0.5 * gamma * damping,
                                    -(hv[static_cast<std::size_t>(k)] - hv[static_cast<std::size_t>(l)]));
        }
    }
    return g;
}

Superoperator build_general(const SpectralDecomposition& s, const RealMatrix& lambda_rate,
                            const DriftPreset& h) {
    const auto m = static_cast<Eigen::Index>(s.level_count());
    if (lambda_rate.rows() != m || lambda_rate.cols() != m) {
        std::ostringstream os;
        os << "rate table is " << lambda_rate.rows() << "x" << lambda_rate.cols() << ", expected " << m
           << "x" << m;
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
    const double asym = (lambda_rate - lambda_rate.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12) throw Error(ErrorKind::KernelAsymmetric, "rate table is not symmetric", asym);
    if (lambda_rate.diagonal().minCoeff() < 0.0) {
        throw Error(ErrorKind::InvalidArgument, "rate table diagonal must be >= 0");
    }
    const std::vector<double> hv = drift_values(s, h);
    const Eigen::Index d = s.dim();
    Superoperator g{GeneratorKind::General, s, Matrix(d, d)};
    for (Eigen::Index k = 0; k < d; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        for (Eigen::Index l = 0; l < d; ++l) {
            const auto ul = static_cast<std::size_t>(l);
            const double rate = lambda_rate(static_cast<Eigen::Index>(s.level_of[uk]),
                                            static_cast<Eigen::Index>(s.level_of[ul]));
            g.rates(k, l) = Complex(-0.5 * rate, -(hv[uk] - hv[ul]));
        }
    }
    return g;
}

EvolutionResult integrate(const Superoperator& g, const DensityMatrix& rho0, const TimeGrid& grid,
                          const IntegrateOptions& options) {
    grid.validate();
    const SpectralDecomposition& s = g.spectrum;
    Matrix rho = to_energy_basis(rho0, s);

    const double interval = grid.step();
    const double max_rate = g.rates.size() == 0 ? 0.0 : g.rates.cwiseAbs().maxCoeff();
    double h_max = interval;
    if (options.max_step > 0.0) {
        h_max = options.max_step;
    } else if (max_rate > 0.0) {
        h_max = options.step_fraction / max_rate;
    }
    const int substeps = std::max(1, static_cast<int>(std::ceil(interval / h_max - 1e-12)));
    const double h = interval / substeps;

    // Local error of one step: RK4 reproduces exp(z) through the z^4 term.
    double local_error = 0.0;
    for (Eigen::Index i = 0; i < g.rates.size(); ++i) {
        const Complex z = g.rates(i) * h;
        const Complex poly = 1.0 + z * (1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0)));
        local_error = std::max(local_error, std::abs(std::exp(z) - poly));
    }
    if (local_error > options.local_error_limit) {
        std::ostringstream os;
        os << "RK4 step " << h << " has local error " << local_error;
        throw Error(ErrorKind::StepTooLarge, os.str(), local_error);
    }

    EvolutionResult result;
    result.provenance = Provenance::MasterEquation;
    result.times = grid.times();
    result.states.reserve(result.times.size());
    result.states.push_back(rho0.matrix());
    for (int step = 0; step < grid.n_steps; ++step) {
        for (int sub = 0; sub < substeps; ++sub) {
            const Matrix k1 = g.apply_energy(rho);
            const Matrix k2 = g.apply_energy(rho + 0.5 * h * k1);
            const Matrix k3 = g.apply_energy(rho + 0.5 * h * k2);
            const Matrix k4 = g.apply_energy(rho + h * k3);
            rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        result.states.push_back(from_energy_basis(rho, s));
    }
    return result;
}

EvolutionResult evolve_exact(const Superoperator& g, const DensityMatrix& rho0,
                             const TimeGrid& grid) {
    grid.validate();
    const Matrix rho = to_energy_basis(rho0, g.spectrum);
    EvolutionResult result;
    result.provenance = Provenance::Analytic;
    result.times = grid.times();
    for (double t : result.times) {
        result.states.push_back(
            from_energy_basis(g.propagator_factors(t).cwiseProduct(rho), g.spectrum));
    }
    return result;
}

Matrix choi_matrix(const Superoperator& g, double t) {
    if (t < 0.0) throw Error(ErrorKind::InvalidArgument, "Choi matrix needs t >= 0");
    const Eigen::Index d = g.dim();
    const Matrix factors = g.propagator_factors(t);
    Matrix choi = Matrix::Zero(d * d, d * d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            Matrix unit = Matrix::Zero(d, d);
            unit(i, j) = 1.0;
            choi.block(i * d, j * d, d, d) = factors.cwiseProduct(unit);
        }
    }
    return choi;
}

bool CpReport::completely_positive(double tol) const {
    return std::all_of(rows.begin(), rows.end(),
                       [&](const CpReportRow& r) { return r.min_choi_eigenvalue >= -tol; });
}

CpReport cp_report(const Superoperator& g, const std::vector<double>& times) {
    CpReport report;
    const Eigen::Index d = g.dim();
    for (double t : times) {
        CpReportRow row;
        row.t = t;
        row.min_choi_eigenvalue = min_hermitian_eigenvalue(choi_matrix(g, t));

        const Matrix factors = g.propagator_factors(t);
        for (Eigen::Index i = 0; i < d; ++i) {
            const double defect = std::abs(factors(i, i) - 1.0);
            row.trace_defect = std::max(row.trace_defect, defect);
            row.unitality_defect = std::max(row.unitality_defect, defect);
        }
        const Matrix twice = g.propagator_factors(2.0 * t);
        row.semigroup_defect = max_abs_entry(twice - factors.cwiseProduct(factors));
        report.rows.push_back(row);
    }
    return report;
}

} // namespace idec
