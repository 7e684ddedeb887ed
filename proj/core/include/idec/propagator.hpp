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

#include <span>
#include <vector>

#include "idec/noise.hpp"
#include "idec/operators.hpp"

namespace idec {

// Averaged state together with the checks the propagator runs on it.
struct PropagatedState {
    Matrix rho;
    double trace = 1.0;
    double min_eigenvalue = 0.0;
    // Set when the kernel has lambda(t; theta, theta) != 0 and the trace drifts.
    bool dissipative_trace_loss = false;

    DensityMatrix density(const DensityTolerance& tol = {}) const {
        return validate_density(rho, tol);
    }
};

// Elementwise averaged evolution in the energy basis:
//   rho_kl(t) = exp(-i t (h_k - h_l)) exp(-lambda(t; theta_k, theta_l) / 2) rho0_kl.
PropagatedState averaged_state(const SpectralDecomposition& s, const NoiseModel& model,
                               const DensityMatrix& rho0, double t);

// Same map applied to an arbitrary matrix, returned in the original basis.
Matrix averaged_map(const SpectralDecomposition& s, const NoiseModel& model, const Matrix& m,
                    double t);

// Single random time shared by all levels, chi_t = t + int sigma dB:
//   rho_kl(t) = exp(-i t (theta_k - theta_l)) exp(-lambda(t) (theta_k - theta_l)^2 / 2) rho0_kl,
// with lambda(t) = lambda_global(model, t). Only gamma and sigma_time are read.
PropagatedState averaged_state_global(const SpectralDecomposition& s, const NoiseModel& profile,
                                      const DensityMatrix& rho0, double t);

// Variant taking lambda(t) directly.
PropagatedState averaged_state_global(const SpectralDecomposition& s, double lambda_t,
                                      const DensityMatrix& rho0, double t);

// rho_bar = int_0^inf P(t') rho(t') dt' by the trapezoidal rule on the
// sample times. A single sample is treated as a point mass. Throws
// WeightsNotNormalized if the weights are negative or do not integrate to 1
// within 1e-8.
DensityMatrix time_averaged_state(std::span<const Matrix> states, std::span<const double> times,
                                  std::span<const double> density);

// max |Phi_{t+s}[rho0] - Phi_t[Phi_s[rho0]]| with Phi = averaged_map.
double semigroup_defect(const SpectralDecomposition& s, const NoiseModel& model,
                        const DensityMatrix& rho0, double t, double sub);

} // namespace idec
