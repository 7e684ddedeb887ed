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

#include "idec/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "idec/errors.hpp"
#include "idec/sampling.hpp"

namespace idec {

namespace {

// Deviations at rounding level are agreement regardless of the standard
// error (entries that are deterministic up to rounding have se ~ 1e-17).
constexpr double kRoundingFloor = 1e-12;

// Welford accumulator over one block of trajectories, per time point.
struct Accumulator {
    double count = 0.0;
    std::vector<Matrix> mean;
    std::vector<RealMatrix> m2_re;
    std::vector<RealMatrix> m2_im;

    Accumulator(std::size_t n_times, Eigen::Index d)
        : mean(n_times, Matrix::Zero(d, d)),
          m2_re(n_times, RealMatrix::Zero(d, d)),
          m2_im(n_times, RealMatrix::Zero(d, d)) {}

    void push(std::size_t time_index, const Matrix& x) {
        Matrix& mu = mean[time_index];
        const Matrix delta = x - mu;
        mu += delta / count;
        const Matrix after = x - mu;
        m2_re[time_index].array() += delta.real().array() * after.real().array();
        m2_im[time_index].array() += delta.imag().array() * after.imag().array();
    }

    // Chan et al. pairwise merge.
    void merge(const Accumulator& other) {
        if (other.count == 0.0) return;
        if (count == 0.0) {
            *this = other;
            return;
        }
        const double total = count + other.count;
        const double weight = count * other.count / total;
        for (std::size_t i = 0; i < mean.size(); ++i) {
            const Matrix delta = other.mean[i] - mean[i];
            mean[i] += delta * (other.count / total);
            m2_re[i].array() += other.m2_re[i].array() + delta.real().array().square() * weight;
            m2_im[i].array() += other.m2_im[i].array() + delta.imag().array().square() * weight;
        }
        count = total;
    }
};

} // namespace

Matrix random_unitary(const SpectralDecomposition& s, const Eigen::Ref<const RealVector>& chi) {
    if (static_cast<std::size_t>(chi.size()) != s.level_count()) {
        throw Error(ErrorKind::DimensionMismatch, "one phase per distinct level required");
    }
    Matrix u = Matrix::Zero(s.dim(), s.dim());
    for (std::size_t j = 0; j < s.level_count(); ++j) {
        u += std::exp(Complex(0.0, -chi(static_cast<Eigen::Index>(j)))) * s.projectors[j];
    }
    return u;
}

EnsembleResult run_ensemble(const SpectralDecomposition& s, const NoiseModel& model,
                            const DensityMatrix& rho0, const TimeGrid& grid, std::size_t n_traj,
                            std::uint64_t seed, const EnsembleOptions& options) {
    if (n_traj < 1) throw Error(ErrorKind::InvalidArgument, "ensemble needs n_traj >= 1");
    if (options.block_size < 1) throw Error(ErrorKind::InvalidArgument, "block_size must be >= 1");
    if (rho0.dim() != s.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "state and spectrum dimensions differ");
    }
    const ChiSampler sampler(model, s.levels, grid);
    const Matrix rho_energy = to_energy_basis(rho0, s);
    const Eigen::Index d = s.dim();
    const std::size_t n_times = static_cast<std::size_t>(grid.n_steps) + 1;
    const std::size_t n_blocks = (n_traj + options.block_size - 1) / options.block_size;

    std::vector<Accumulator> blocks(n_blocks, Accumulator(n_times, d));
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        RealMatrix chi;
        Eigen::VectorXcd phases(d);
        Matrix a(d, d);
        Matrix rho(d, d);
        for (std::size_t b = next.fetch_add(1); b < n_blocks; b = next.fetch_add(1)) {
            Accumulator& acc = blocks[b];
            const std::size_t first = b * options.block_size;
            const std::size_t last = std::min(n_traj, first + options.block_size);
            for (std::size_t j = first; j < last; ++j) {
                sampler.sample(seed, j, chi);
                acc.count += 1.0;
                for (std::size_t ti = 0; ti < n_times; ++ti) {
                    for (Eigen::Index k = 0; k < d; ++k) {
                        const auto level = static_cast<Eigen::Index>(s.level_of[static_cast<std::size_t>(k)]);
                        phases(k) = std::exp(Complex(0.0, -chi(static_cast<Eigen::Index>(ti), level)));
                    }
                    // U rho0 U^dagger with U = V diag(phases) V^dagger.
                    a.noalias() = s.eigenvectors * phases.asDiagonal();
                    rho.noalias() = a * rho_energy * a.adjoint();
                    acc.push(ti, rho);
                }
            }
        }
    };

    unsigned threads = options.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                            : options.threads;
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_blocks));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    Accumulator total(n_times, d);
    for (const Accumulator& block : blocks) total.merge(block);

    EnsembleResult result;
    result.times = grid.times();
    result.n_traj = n_traj;
    result.seed = seed;
    result.mean = total.mean;
    const double n = total.count;
    for (std::size_t ti = 0; ti < n_times; ++ti) {
        if (n > 1.0) {
            result.std_error_re.push_back((total.m2_re[ti] / ((n - 1.0) * n)).cwiseMax(0.0).cwiseSqrt());
            result.std_error_im.push_back((total.m2_im[ti] / ((n - 1.0) * n)).cwiseMax(0.0).cwiseSqrt());
        } else {
            result.std_error_re.push_back(RealMatrix::Zero(d, d));
            result.std_error_im.push_back(RealMatrix::Zero(d, d));
        }
    }
    return result;
}

ComparisonReport compare_to_analytic(const EnsembleResult& ensemble,
                                     const std::vector<Matrix>& analytic) {
    if (analytic.size() != ensemble.mean.size()) {
        throw Error(ErrorKind::GridMismatch, "ensemble and analytic series differ in length");
    }
    ComparisonReport report;
    std::size_t total = 0;
    std::size_t above = 0;
    auto z_of = [](double dev, double se) {
        if (dev <= kRoundingFloor) return 0.0;
        return se > 0.0 ? dev / se : std::numeric_limits<double>::infinity();
    };
    for (std::size_t ti = 0; ti < analytic.size(); ++ti) {
        const Matrix& mean = ensemble.mean[ti];
        const Matrix& ref = analytic[ti];
        if (ref.rows() != mean.rows() || ref.cols() != mean.cols()) {
            throw Error(ErrorKind::GridMismatch, "ensemble and analytic dimensions differ");
        }
        ComparisonPoint point;
        point.t = ti < ensemble.times.size() ? ensemble.times[ti] : 0.0;
        for (Eigen::Index i = 0; i < ref.size(); ++i) {
            const Complex diff = mean(i) - ref(i);
            point.max_abs_deviation = std::max(point.max_abs_deviation, std::abs(diff));
            const double zr = z_of(std::abs(diff.real()), ensemble.std_error_re[ti](i));
            const double zi = z_of(std::abs(diff.imag()), ensemble.std_error_im[ti](i));
            for (double z : {zr, zi}) {
                point.max_z = std::max(point.max_z, z);
                ++point.entries;
                if (z > 3.0) ++point.entries_above_3;
            }
        }
        report.max_z = std::max(report.max_z, point.max_z);
        total += point.entries;
        above += point.entries_above_3;
        report.points.push_back(point);
    }
    report.fraction_above_3 = total == 0 ? 0.0 : static_cast<double>(above) / static_cast<double>(total);
    if (ensemble.n_traj >= 2) {
        report.pass = report.max_z <= ComparisonReport::kMaxZ &&
                      report.fraction_above_3 <= ComparisonReport::kZ3Fraction;
    }
    return report;
}

} // namespace idec
