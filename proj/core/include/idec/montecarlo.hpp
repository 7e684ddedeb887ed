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
#include <optional>
#include <vector>

#include "idec/grid.hpp"
#include "idec/noise.hpp"
#include "idec/operators.hpp"

namespace idec {

struct EnsembleOptions {
    // Worker cap; 0 uses std::thread::hardware_concurrency().
    unsigned threads = 1;
    // Trajectories per accumulation block. Blocks are merged in index order,
    // so results do not depend on the number of workers.
    std::size_t block_size = 256;
};

struct EnsembleResult {
    std::vector<double> times;
    std::vector<Matrix> mean;
    // Standard error of the mean, real and imaginary parts separately.
    std::vector<RealMatrix> std_error_re;
    std::vector<RealMatrix> std_error_im;
    std::size_t n_traj = 0;
    std::uint64_t seed = 0;
};

// U = sum_j exp(-i chi_j) P_j over the distinct levels.
Matrix random_unitary(const SpectralDecomposition& s, const Eigen::Ref<const RealVector>& chi);

// Averages rho_j(t) = U_j(t) rho0 U_j(t)^dagger over n_traj trajectories of
// chi paths. Throws Unsupported for direct_lambda models (no stochastic
// realization exists).
EnsembleResult run_ensemble(const SpectralDecomposition& s, const NoiseModel& model,
                            const DensityMatrix& rho0, const TimeGrid& grid, std::size_t n_traj,
                            std::uint64_t seed, const EnsembleOptions& options = {});

struct ComparisonPoint {
    double t = 0.0;
    double max_abs_deviation = 0.0;
    double max_z = 0.0;
    std::size_t entries = 0;
    std::size_t entries_above_3 = 0;
};

struct ComparisonReport {
    std::vector<ComparisonPoint> points;
    double max_z = 0.0;
    double fraction_above_3 = 0.0;
    // Empty when fewer than two trajectories were sampled.
    std::optional<bool> pass;

    static constexpr double kMaxZ = 4.0;
    static constexpr double kZ3Fraction = 0.05;
};

// z = |mean - analytic| / std_error per real and imaginary component.
// Deviations of at most 1e-12 count as z = 0; a larger deviation with zero
// standard error counts as z = inf. PASS iff max z <= 4 and at most 5% of
// components exceed z = 3. Throws GridMismatch if time counts or dimensions
// disagree.
ComparisonReport compare_to_analytic(const EnsembleResult& ensemble,
                                     const std::vector<Matrix>& analytic);

} // namespace idec
