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

#include "idec/sampling.hpp"

#include <cmath>
#include <sstream>

#include "idec/errors.hpp"
#include "idec/rng.hpp"

namespace idec {

namespace {

constexpr double kShareThreshold = 1.0 - 1e-15;
constexpr double kPsdFailure = -1e-8;

// dB_i = sqrt(dt) * sum_r L(i, r) z_r, written out so every caller sums in
// the same order.
void correlate(const RealMatrix& l, const std::vector<double>& z, double sqrt_dt, double* out) {
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
        double acc = 0.0;
        for (Eigen::Index r = 0; r < l.cols(); ++r) acc += l(i, r) * z[static_cast<std::size_t>(r)];
        out[i] = acc * sqrt_dt;
    }
}

void draw(NormalStream& stream, std::vector<double>& z) {
    for (double& v : z) v = stream();
}

} // namespace

BrownianFactor brownian_factor(const NoiseModel& model, const std::vector<double>& levels) {
    if (levels.empty()) throw Error(ErrorKind::InvalidArgument, "no levels to sample");
    const RealMatrix g = correlation_matrix(model, levels);
    const Eigen::Index m = g.rows();

    // Perfectly correlated levels collapse onto one representative process.
    std::vector<Eigen::Index> rep_of(static_cast<std::size_t>(m));
    std::vector<Eigen::Index> reps;
    for (Eigen::Index i = 0; i < m; ++i) {
        Eigen::Index slot = -1;
        for (std::size_t r = 0; r < reps.size(); ++r) {
            if (g(i, reps[r]) >= kShareThreshold) {
                slot = static_cast<Eigen::Index>(r);
                break;
            }
        }
        if (slot < 0) {
            slot = static_cast<Eigen::Index>(reps.size());
            reps.push_back(i);
        }
        rep_of[static_cast<std::size_t>(i)] = slot;
    }

    const auto n = static_cast<Eigen::Index>(reps.size());
    RealMatrix reduced(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = 0; b < n; ++b) {
            reduced(a, b) = g(reps[static_cast<std::size_t>(a)], reps[static_cast<std::size_t>(b)]);
        }
    }
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(reduced);
    RealVector values = solver.eigenvalues();
    BrownianFactor factor;
    factor.min_eigenvalue = values.minCoeff();
    if (factor.min_eigenvalue < kPsdFailure) {
        std::ostringstream os;
        os << "correlation matrix has eigenvalue " << factor.min_eigenvalue;
        throw Error(ErrorKind::KernelNotPSD, os.str(), factor.min_eigenvalue);
    }
    values = values.cwiseMax(0.0).cwiseSqrt();
    RealMatrix root = solver.eigenvectors() * values.asDiagonal() * solver.eigenvectors().transpose();
    for (Eigen::Index a = 0; a < n; ++a) {
        const double norm = root.row(a).norm();
        if (norm > 0.0) root.row(a) /= norm;
    }

    factor.l.resize(m, n);
    for (Eigen::Index i = 0; i < m; ++i) factor.l.row(i) = root.row(rep_of[static_cast<std::size_t>(i)]);
    return factor;
}

BrownianFieldSample sample_brownian_trajectory(const BrownianFactor& factor, const TimeGrid& grid,
                                               std::uint64_t seed, std::uint64_t trajectory) {
    grid.validate();
    BrownianFieldSample sample;
    sample.seed = seed;
    sample.trajectory = trajectory;
    sample.times = grid.times();
    sample.increments.resize(grid.n_steps, factor.l.rows());

    NormalStream stream(seed, trajectory);
    std::vector<double> z(static_cast<std::size_t>(factor.l.cols()));
    std::vector<double> db(static_cast<std::size_t>(factor.l.rows()));
    const double sqrt_dt = std::sqrt(grid.step());
    for (int step = 0; step < grid.n_steps; ++step) {
        draw(stream, z);
        correlate(factor.l, z, sqrt_dt, db.data());
        for (Eigen::Index i = 0; i < factor.l.rows(); ++i) {
            sample.increments(step, i) = db[static_cast<std::size_t>(i)];
        }
    }
    return sample;
}

std::vector<BrownianFieldSample> sample_brownian_field(const NoiseModel& model,
                                                       const std::vector<double>& levels,
                                                       const TimeGrid& grid, std::uint64_t seed,
                                                       std::size_t n_traj) {
    const BrownianFactor factor = brownian_factor(model, levels);
    std::vector<BrownianFieldSample> out;
    out.reserve(n_traj);
    for (std::size_t j = 0; j < n_traj; ++j) {
        out.push_back(sample_brownian_trajectory(factor, grid, seed, j));
    }
    return out;
}

ChiSampler::ChiSampler(const NoiseModel& model, std::vector<double> levels, TimeGrid grid)
    : levels_(std::move(levels)), grid_(grid) {
    model.validate();
    grid_.validate();
    if (model.direct_lambda) {
        throw Error(ErrorKind::Unsupported,
                    "direct_lambda kernels have no Brownian realization to sample");
    }
    factor_ = brownian_factor(model, levels_);

    const auto m = static_cast<Eigen::Index>(levels_.size());
    drift_.resize(m);
    for (Eigen::Index i = 0; i < m; ++i) drift_(i) = model.h(levels_[static_cast<std::size_t>(i)]);

    const double dt = grid_.step();
    scale_.resize(grid_.n_steps, m);
    for (int step = 0; step < grid_.n_steps; ++step) {
        const double rms =
            std::sqrt(model.gamma * model.time_variance(grid_.time(step), grid_.time(step + 1)) / dt);
        for (Eigen::Index i = 0; i < m; ++i) {
            scale_(step, i) = rms * model.sigma_of_level(levels_[static_cast<std::size_t>(i)]);
        }
    }
}

void ChiSampler::sample(std::uint64_t seed, std::uint64_t trajectory, RealMatrix& chi) const {
    const Eigen::Index m = factor_.l.rows();
    chi.resize(grid_.n_steps + 1, m);
    chi.row(0).setZero();

    NormalStream stream(seed, trajectory);
    std::vector<double> z(static_cast<std::size_t>(factor_.l.cols()));
    std::vector<double> db(static_cast<std::size_t>(m));
    const double dt = grid_.step();
    const double sqrt_dt = std::sqrt(dt);
    for (int step = 0; step < grid_.n_steps; ++step) {
        draw(stream, z);
        correlate(factor_.l, z, sqrt_dt, db.data());
        for (Eigen::Index i = 0; i < m; ++i) {
            chi(step + 1, i) =
                chi(step, i) + drift_(i) * dt + scale_(step, i) * db[static_cast<std::size_t>(i)];
        }
    }
}

RealMatrix ChiSampler::integrate(const BrownianFieldSample& sample) const {
    const Eigen::Index m = factor_.l.rows();
    if (sample.increments.rows() != grid_.n_steps || sample.increments.cols() != m) {
        throw Error(ErrorKind::GridMismatch, "Brownian sample does not match the sampler grid");
    }
    RealMatrix chi(grid_.n_steps + 1, m);
    chi.row(0).setZero();
    const double dt = grid_.step();
    for (int step = 0; step < grid_.n_steps; ++step) {
        for (Eigen::Index i = 0; i < m; ++i) {
            chi(step + 1, i) =
                chi(step, i) + drift_(i) * dt + scale_(step, i) * sample.increments(step, i);
        }
    }
    return chi;
}

ChiPaths sample_chi_paths(const NoiseModel& model, const std::vector<double>& levels,
                          const TimeGrid& grid, std::uint64_t seed, std::size_t n_traj) {
    const ChiSampler sampler(model, levels, grid);
    ChiPaths out;
    out.times = grid.times();
    out.paths.resize(n_traj);
    for (std::size_t j = 0; j < n_traj; ++j) sampler.sample(seed, j, out.paths[j]);
    return out;
}

double gaussian_moment(int order, double lambda) {
    if (order < 0) throw Error(ErrorKind::InvalidArgument, "moment order must be >= 0");
    if (order % 2 == 1) return 0.0;
    // (2n)! / (2^n n!) = (2n - 1)!!
    double value = 1.0;
    for (int k = order - 1; k > 1; k -= 2) value *= k;
    return value * std::pow(lambda, order / 2);
}

std::vector<MomentRow> moment_report(const NoiseModel& model, double t, double theta,
                                     double theta_prime, std::size_t n_traj, std::uint64_t seed,
                                     int max_order, int n_substeps) {
    if (n_traj < 1000) throw Error(ErrorKind::InvalidArgument, "moment_report needs n_traj >= 1000");
    if (max_order < 1) throw Error(ErrorKind::InvalidArgument, "max_order must be >= 1");
    if (!(t > 0.0)) throw Error(ErrorKind::InvalidArgument, "moment_report needs t > 0");
    model.validate();
    if (model.direct_lambda) {
        throw Error(ErrorKind::Unsupported, "direct_lambda kernels have no Brownian realization");
    }

    const double lambda = lambda_pair(model, t, theta, theta_prime);
    std::vector<double> x(n_traj, 0.0);
    if (theta != theta_prime) {
        const TimeGrid grid{0.0, t, n_substeps};
        const ChiSampler sampler(model, {theta, theta_prime}, grid);
        const RealMatrix& scale = sampler.diffusion_scale();
        for (std::size_t j = 0; j < n_traj; ++j) {
            const BrownianFieldSample db = sample_brownian_trajectory(sampler.factor(), grid, seed, j);
            double acc = 0.0;
            for (int step = 0; step < n_substeps; ++step) {
                acc += scale(step, 0) * db.increments(step, 0) - scale(step, 1) * db.increments(step, 1);
            }
            x[j] = acc;
        }
    }

    std::vector<MomentRow> rows;
    const auto n = static_cast<double>(n_traj);
    for (int order = 1; order <= max_order; ++order) {
        double mean = 0.0;
        for (double v : x) mean += std::pow(v, order);
        mean /= n;
        double var = 0.0;
        for (double v : x) {
            const double d = std::pow(v, order) - mean;
            var += d * d;
        }
        var /= (n - 1.0);
        rows.push_back({order, mean, gaussian_moment(order, lambda), std::sqrt(var / n)});
    }
    return rows;
}

} // namespace idec
