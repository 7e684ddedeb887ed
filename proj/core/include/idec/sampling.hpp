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
#include <vector>

#include "idec/grid.hpp"
#include "idec/noise.hpp"

namespace idec {

// Square-root factor L of the level correlation matrix G (L L^T = G with
// unit row norms). Levels that are perfectly correlated (g == 1) share a
// row of L exactly, so they receive bit-identical noise.
struct BrownianFactor {
    RealMatrix l;
    double min_eigenvalue = 0.0;
};

// Throws KernelNotPSD when G has an eigenvalue below -1e-8. Eigenvalues in
// [-1e-8, 0) are clipped to zero and the rows renormalized.
BrownianFactor brownian_factor(const NoiseModel& model, const std::vector<double>& levels);

struct BrownianFieldSample {
    std::uint64_t seed = 0;
    std::uint64_t trajectory = 0;
    std::vector<double> times;
    // increments(step, level); Cov(dB_i, dB_j) = g(level_i, level_j) * dt per step.
    RealMatrix increments;
};

// Increments for one trajectory. Depends only on (seed, trajectory, grid).
BrownianFieldSample sample_brownian_trajectory(const BrownianFactor& factor, const TimeGrid& grid,
                                               std::uint64_t seed, std::uint64_t trajectory);

std::vector<BrownianFieldSample> sample_brownian_field(const NoiseModel& model,
                                                       const std::vector<double>& levels,
                                                       const TimeGrid& grid, std::uint64_t seed,
                                                       std::size_t n_traj);

// Integrates d chi(theta) = h(theta) dt + sigma(t; theta) dB(theta) along the
// grid. Over each step the diffusion uses the exact variance
// int sigma_time^2 ds, so the scheme is exact in distribution for every
// sigma_time preset.
class ChiSampler {
public:
    ChiSampler(const NoiseModel& model, std::vector<double> levels, TimeGrid grid);

    const std::vector<double>& levels() const { return levels_; }
    const TimeGrid& grid() const { return grid_; }

    // Fills chi(step, level) for step = 0..n_steps; chi(0, .) = 0.
    void sample(std::uint64_t seed, std::uint64_t trajectory, RealMatrix& chi) const;

    // Same path from precomputed Brownian increments.
    RealMatrix integrate(const BrownianFieldSample& sample) const;

    // X_t(i, j) path integral pieces: per-step diffusion scale of each level,
    // sqrt(gamma * int_step sigma_time^2 / dt) * sigma_level(level).
    const RealMatrix& diffusion_scale() const { return scale_; }
    const BrownianFactor& factor() const { return factor_; }

private:
    std::vector<double> levels_;
    TimeGrid grid_;
    BrownianFactor factor_;
    RealVector drift_;
    RealMatrix scale_;  // (step, level)
};

struct ChiPaths {
    std::vector<double> times;
    std::vector<RealMatrix> paths;  // per trajectory: (step, level)
};

ChiPaths sample_chi_paths(const NoiseModel& model, const std::vector<double>& levels,
                          const TimeGrid& grid, std::uint64_t seed, std::size_t n_traj);

struct MomentRow {
    int order = 0;
    double empirical = 0.0;
    double predicted = 0.0;
    double std_error = 0.0;
};

// Empirical moments of X_t = int sigma(theta) dB(theta) - int sigma(theta') dB(theta')
// against beta_{2n} = (2n)!/(2^n n!) lambda^n and beta_{2n+1} = 0, for
// orders 1..max_order. Sampled on `n_substeps` equal steps of [0, t].
std::vector<MomentRow> moment_report(const NoiseModel& model, double t, double theta,
                                     double theta_prime, std::size_t n_traj, std::uint64_t seed,
                                     int max_order = 6, int n_substeps = 16);

// (2n)! / (2^n n!) lambda^n for even orders, 0 for odd.
double gaussian_moment(int order, double lambda);

} // namespace idec
