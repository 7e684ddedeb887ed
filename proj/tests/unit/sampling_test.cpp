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

#include <gtest/gtest.h>

#include <cmath>
#include <complex>

#include "idec/errors.hpp"
#include "idec/sampling.hpp"

namespace idec {
namespace {

struct Stats {
    double mean = 0.0;
    double var = 0.0;
};

Stats stats(const std::vector<double>& x) {
    Stats s;
    for (double v : x) s.mean += v;
    s.mean /= static_cast<double>(x.size());
    for (double v : x) s.var += (v - s.mean) * (v - s.mean);
    s.var /= static_cast<double>(x.size() - 1);
    return s;
}

TEST(BrownianField, UniformCorrelationSharesOnePath) {
    NoiseModel m;
    const TimeGrid grid{0.0, 1.0, 20};
    const auto field = sample_brownian_field(m, {-1.0, 0.0, 2.0}, grid, 11, 3);
    ASSERT_EQ(field.size(), 3u);
    for (const auto& f : field) {
        EXPECT_EQ(f.increments.cols(), 3);
        EXPECT_EQ(f.increments.col(0), f.increments.col(1));
        EXPECT_EQ(f.increments.col(0), f.increments.col(2));
    }
    EXPECT_EQ(brownian_factor(m, {-1.0, 0.0, 2.0}).l.cols(), 1);
}

TEST(BrownianField, GaussianKernelDecorrelatesDistantLevels) {
    NoiseModel m;
    m.correlation = correlation::Gaussian{2.0};
    const TimeGrid grid{0.0, 1.0, 4000};
    const auto field = sample_brownian_field(m, {-1.0, 0.0, 1.0}, grid, 99, 1);
    const RealMatrix& db = field[0].increments;
    const double c = db.col(0).dot(db.col(2)) / (db.col(0).norm() * db.col(2).norm());
    EXPECT_LT(std::abs(c - std::exp(-16.0)), 3.0 / std::sqrt(grid.n_steps));
    // Neighbouring levels keep correlation exp(-4).
    const double near = db.col(0).dot(db.col(1)) / (db.col(0).norm() * db.col(1).norm());
    EXPECT_LT(std::abs(near - std::exp(-4.0)), 3.0 / std::sqrt(grid.n_steps));
}

TEST(BrownianField, IncrementVarianceIsStep) {
    NoiseModel m;
    m.correlation = correlation::Exponential{0.5};
    const TimeGrid grid{0.0, 2.0, 50000};
    const auto field = sample_brownian_field(m, {0.0, 1.0}, grid, 3, 1);
    for (int c = 0; c < 2; ++c) {
        const RealVector col = field[0].increments.col(c);
        const double var = col.squaredNorm() / grid.n_steps;
        // Relative standard error of a chi-square mean is sqrt(2 / n).
        EXPECT_NEAR(var / grid.step(), 1.0, 5.0 * std::sqrt(2.0 / grid.n_steps));
    }
}

TEST(BrownianField, ReproducibleFromSeedAndIndex) {
    NoiseModel m;
    m.correlation = correlation::Gaussian{0.5};
    const TimeGrid grid{0.0, 1.0, 8};
    const auto a = sample_brownian_field(m, {0.0, 1.0, 3.0}, grid, 42, 5);
    const BrownianFactor f = brownian_factor(m, {0.0, 1.0, 3.0});
    const auto b = sample_brownian_trajectory(f, grid, 42, 3);
    EXPECT_EQ(a[3].increments, b.increments);
    EXPECT_NE(a[2].increments, a[3].increments);
}

TEST(BrownianFactor, ReproducesCorrelationMatrix) {
    NoiseModel m;
    m.correlation = correlation::Exponential{2.0};
    const BrownianFactor f = brownian_factor(m, {0.0, 0.5, 1.0, 4.0});
    EXPECT_GT(f.min_eigenvalue, 0.0);
    const RealMatrix g = f.l * f.l.transpose();
    EXPECT_TRUE(g.isApprox(correlation_matrix(m, {0.0, 0.5, 1.0, 4.0}), 1e-10));
}

TEST(ChiSampler, ZeroNoiseIsDeterministicDrift) {
    NoiseModel m;
    m.sigma_level = sigma_level::Constant{0.0};
    m.drift = drift::Affine{2.0, 0.5};
    const TimeGrid grid{0.0, 3.0, 6};
    const auto paths = sample_chi_paths(m, {-1.0, 1.0}, grid, 1, 2);
    for (const auto& p : paths.paths) {
        for (int i = 0; i <= grid.n_steps; ++i) {
            EXPECT_NEAR(p(i, 0), -1.5 * grid.time(i), 1e-13);
            EXPECT_NEAR(p(i, 1), 2.5 * grid.time(i), 1e-13);
        }
    }
}

TEST(ChiSampler, MeanAndVarianceAtEndTime) {
    NoiseModel m;
    m.gamma = 0.7;
    m.drift = drift::Affine{1.5, -0.2};
    m.correlation = correlation::Gaussian{0.8};
    m.sigma_time = sigma_time::PiecewiseConstant{{0.6}, {1.3, 0.4}};
    const std::vector<double> levels{-0.5, 1.2};
    const TimeGrid grid{0.0, 1.5, 5};
    const ChiSampler sampler(m, levels, grid);
    const std::size_t n = 10000;
    RealMatrix chi;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        std::vector<double> end(n);
        for (std::size_t j = 0; j < n; ++j) {
            sampler.sample(8, j, chi);
            end[j] = chi(grid.n_steps, static_cast<Eigen::Index>(k));
        }
        const Stats s = stats(end);
        const double theta = levels[k];
        const double mean = m.h(theta) * grid.t_end;
        // Ito isometry: Var = gamma sigma_level^2 int sigma_time^2.
        const double var = m.gamma * theta * theta * (1.3 * 1.3 * 0.6 + 0.4 * 0.4 * 0.9);
        EXPECT_LT(std::abs(s.mean - mean), 3.0 * std::sqrt(s.var / n));
        EXPECT_LT(std::abs(s.var - var), 5.0 * var * std::sqrt(2.0 / (n - 1)));
    }
}

TEST(ChiSampler, IntegrateMatchesSampleBitwise) {
    NoiseModel m;
    m.correlation = correlation::Exponential{0.9};
    const std::vector<double> levels{0.0, 1.0, 2.5};
    const TimeGrid grid{0.0, 2.0, 12};
    const ChiSampler sampler(m, levels, grid);
    RealMatrix chi;
    sampler.sample(77, 4, chi);
    const auto b = sample_brownian_trajectory(sampler.factor(), grid, 77, 4);
    EXPECT_EQ(sampler.integrate(b), chi);
}

TEST(ChiSampler, RejectsDirectLambda) {
    NoiseModel m;
    m.direct_lambda = DirectLambda{RealMatrix::Zero(2, 2)};
    EXPECT_THROW(ChiSampler(m, {0.0, 1.0}, TimeGrid{}), Error);
}

TEST(Moments, GaussianPredictions) {
    EXPECT_DOUBLE_EQ(gaussian_moment(2, 1.7), 1.7);
    EXPECT_EQ(gaussian_moment(3, 1.7), 0.0);
    EXPECT_DOUBLE_EQ(gaussian_moment(4, 1.7), 3.0 * 1.7 * 1.7);
    EXPECT_DOUBLE_EQ(gaussian_moment(6, 2.0), 15.0 * 8.0);
}

TEST(Moments, ReportAgreesWithPredictions) {
    NoiseModel m;
    m.gamma = 0.5;
    m.correlation = correlation::Gaussian{1.0};
    const auto rows = moment_report(m, 2.0, 1.0, -0.5, 20000, 13, 4);
    ASSERT_EQ(rows.size(), 4u);
    const double lambda = lambda_pair(m, 2.0, 1.0, -0.5);
    EXPECT_DOUBLE_EQ(rows[1].predicted, lambda);
    EXPECT_DOUBLE_EQ(rows[3].predicted, 3.0 * lambda * lambda);
    for (const auto& r : rows) {
        EXPECT_LT(std::abs(r.empirical - r.predicted), 3.0 * r.std_error) << "order " << r.order;
    }
}

TEST(Moments, EqualLevelsVanish) {
    NoiseModel m;
    for (const auto& r : moment_report(m, 1.0, 0.4, 0.4, 1000, 2, 4)) {
        EXPECT_EQ(r.empirical, 0.0);
        EXPECT_EQ(r.predicted, 0.0);
    }
    EXPECT_THROW(moment_report(m, 1.0, 0.0, 1.0, 999, 2), Error);
}

TEST(CharacteristicFunction, ResummedDamping) {
    NoiseModel m;
    m.gamma = 0.8;
    m.correlation = correlation::Exponential{1.2};
    m.sigma_time = sigma_time::PiecewiseConstant{{0.4}, {0.6, 1.1}};
    const double t = 1.0, a = 1.1, b = -0.3;
    const TimeGrid grid{0.0, t, 10};
    const ChiSampler sampler(m, {a, b}, grid);
    const std::size_t n = 20000;
    std::vector<double> re(n), im(n);
    RealMatrix chi;
    for (std::size_t j = 0; j < n; ++j) {
        sampler.sample(31, j, chi);
        // Remove the drift so only the stochastic difference remains.
        const double x = chi(grid.n_steps, 0) - chi(grid.n_steps, 1) - (a - b) * t;
        const std::complex<double> e = std::exp(std::complex<double>(0.0, -x));
        re[j] = e.real();
        im[j] = e.imag();
    }
    const Stats sr = stats(re), si = stats(im);
    const double expect = std::exp(-0.5 * lambda_pair(m, t, a, b));
    EXPECT_LT(std::abs(sr.mean - expect), 3.0 * std::sqrt(sr.var / n));
    EXPECT_LT(std::abs(si.mean), 3.0 * std::sqrt(si.var / n));
}

} // namespace
} // namespace idec
