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

#include <string>
#include <vector>

#include "idec/grid.hpp"
#include "idec/noise.hpp"
#include "idec/operators.hpp"

namespace idec {

enum class GeneratorKind { PhaseDestroying, Correlated, General };

const char* to_string(GeneratorKind kind);

// Generator diagonal in the energy basis: (d rho / dt)_kl = rates(k, l) * rho_kl.
struct Superoperator {
    GeneratorKind kind = GeneratorKind::General;
    SpectralDecomposition spectrum;
    Matrix rates;

    Eigen::Index dim() const { return rates.rows(); }
    // Applies the generator to a matrix given in the energy basis.
    Matrix apply_energy(const Matrix& rho_energy) const;
    // exp(rates * t) elementwise.
    Matrix propagator_factors(double t) const;
};

// d rho/dt = -i[H, rho] - (gamma/2)[H, [H, rho]]
Superoperator build_phase_destroying(const SpectralDecomposition& s, double gamma);

// d rho/dt = -i[h(H), rho] - (gamma/2)(H^2 rho + rho H^2 - 2 H exp(-tau^2 L_H^2)[rho] H)
Superoperator build_correlated(const SpectralDecomposition& s, double gamma, double tau,
                               const DriftPreset& h = drift::Identity{});

// rates(k, l) = -i(h_k - h_l) - lambda_rate(level_k, level_l) / 2, where
// lambda_rate is indexed by distinct levels (same convention as
// DirectLambda). Throws KernelAsymmetric if the table is not symmetric and
// InvalidArgument if a diagonal entry is negative.
Superoperator build_general(const SpectralDecomposition& s, const RealMatrix& lambda_rate,
                            const DriftPreset& h = drift::Identity{});

enum class Provenance { Analytic, MasterEquation, MonteCarlo };

const char* to_string(Provenance p);

struct EvolutionResult {
    Provenance provenance = Provenance::Analytic;
    std::vector<double> times;
    std::vector<Matrix> states;  // original basis
};

struct IntegrateOptions {
    // Maximum RK4 step as a fraction of 1 / max|rate|.
    double step_fraction = 0.01;
    // Explicit step size; 0 selects from step_fraction and the grid.
    double max_step = 0.0;
    double local_error_limit = 1e-6;
};

// Classic RK4 on the elementwise equation, reporting states on the grid.
// Throws StepTooLarge if the local error of one step, measured against the
// exact elementwise exponential, exceeds local_error_limit.
EvolutionResult integrate(const Superoperator& g, const DensityMatrix& rho0, const TimeGrid& grid,
                          const IntegrateOptions& options = {});

// Exact elementwise solution on the grid (reference for integrate).
EvolutionResult evolve_exact(const Superoperator& g, const DensityMatrix& rho0,
                             const TimeGrid& grid);

// Choi matrix sum_ij |i><j| (x) Phi_t[|i><j|] of Phi_t = exp(t G), with
// matrix units taken in the energy basis. Index (i * d + a, j * d + b).
Matrix choi_matrix(const Superoperator& g, double t);

struct CpReportRow {
    double t = 0.0;
    double min_choi_eigenvalue = 0.0;
    double trace_defect = 0.0;
    double unitality_defect = 0.0;
    double semigroup_defect = 0.0;
};

struct CpReport {
    std::vector<CpReportRow> rows;
    bool completely_positive(double tol = 1e-10) const;
};

// Per time point: min Choi eigenvalue, max_ij |Tr Phi_t[|i><j|] - delta_ij|,
// max |Phi_t[I] - I|, and max |Phi_2t - Phi_t o Phi_t| over matrix units.
CpReport cp_report(const Superoperator& g, const std::vector<double>& times);

} // namespace idec
