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
#include <random>

#include "idec/errors.hpp"
#include "idec/montecarlo.hpp"
#include "idec/propagator.hpp"
#include "test_util.hpp"

namespace idec {
namespace {

using testing::diag;

SpectralDecomposition qubit() { return eigendecompose(HermitianOperator(diag({0.0, 1.0}))); }

DensityMatrix plus() { return validate_density(testing::plus_state()); }

std::vector<Matrix> analytic(const SpectralDecomposition& s, const NoiseModel& m, const DensityMatrix& rho0,
                             const TimeGrid& grid) {
    std::vector<Matrix> out;
    for (double t : grid.times()) out.push_back(averaged_state(s, m, rho0, t).rho);
    return out;
}

double mean_std_error(const EnsembleResult& e) {
    double acc = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 1; i < e.times.size(); ++i) {
        acc += e.std_error_re[i].sum() + e.std_error_im[i].sum();
        n += 2 * static_cast<std::size_t>(e.std_error_re[i].size());
    }
    return acc / static_cast<double>(n);
}

TEST(Ensemble, ZeroNoiseHasZeroVariance) {
    NoiseModel m;
    m.sigma_level = sigma_level::Constant{0.0};
    const TimeGrid grid{0.0, 2.0, 4};
    const EnsembleResult e = run_ensemble(qubit(), m, plus(), grid, 300, 1);
    const auto exact = analytic(qubit(), m, plus(), grid);
    for (std::size_t i = 0; i < e.times.size(); ++i) {
        EXPECT_LT(e.std_error_re[i].maxCoeff(), 1e-15);
        EXPECT_LT(e.std_error_im[i].maxCoeff(), 1e-15);
        EXPECT_LT(max_abs_entry(e.mean[i] - exact[i]), 1e-14);
    }
}

TEST(Ensemble, DephasingQubitCoherence) {
    NoiseModel m;
    m.gamma = 0.5;
    const TimeGrid grid{0.0, 2.0, 4};
    const EnsembleResult e = run_ensemble(qubit(), m, plus(), grid, 10000, 2026);
    const Complex expect = 0.5 * std::exp(Complex(-0.5, 2.0));
    EXPECT_NEAR(std::abs(expect), 0.303265, 1e-6);
    EXPECT_LT(std::abs(e.mean.back()(0, 1).real() - expect.real()), 3.0 * e.std_error_re.back()(0, 1));
    EXPECT_LT(std::abs(e.mean.back()(0, 1).imag() - expect.imag()), 3.0 * e.std_error_im.back()(0, 1));
    const ComparisonReport r = compare_to_analytic(e, analytic(qubit(), m, plus(), grid));
    ASSERT_TRUE(r.pass.has_value());
    EXPECT_TRUE(*r.pass);
}

TEST(Ensemble, StdErrorFollowsCentralLimitRate) {
    NoiseModel m;
    m.gamma = 0.8;
    m.correlation = correlation::Gaussian{0.6};
    std::mt19937_64 rng(5);
    const auto s = eigendecompose(HermitianOperator(testing::random_hermitian(3, rng)));
    const DensityMatrix rho0 = validate_density(testing::random_density(3, rng));
    const TimeGrid grid{0.0, 1.5, 3};
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const double a = mean_std_error(run_ensemble(s, m, rho0, grid, 4000, seed));
        const double b = mean_std_error(run_ensemble(s, m, rho0, grid, 8000, seed + 100));
        EXPECT_NEAR(b / a, 1.0 / std::sqrt(2.0), 0.2 / std::sqrt(2.0));
    }
}

TEST(Ensemble, MeanIsAValidState) {
    NoiseModel m;
    m.correlation = correlation::Exponential{0.7};
    std::mt19937_64 rng(9);
    const auto s = eigendecompose(HermitianOperator(testing::random_hermitian(4, rng)));
    const DensityMatrix rho0 = validate_density(testing::random_density(4, rng));
    const EnsembleResult e = run_ensemble(s, m, rho0, TimeGrid{0.0, 3.0, 6}, 500, 4);
    for (const auto& mean : e.mean) {
        EXPECT_NEAR(mean.trace().real(), 1.0, 1e-12);
        EXPECT_GE(min_hermitian_eigenvalue(mean), -1e-10);
    }
}

TEST(Ensemble, SelfComparisonPasses) {
    NoiseModel m;
    const TimeGrid grid{0.0, 1.0, 5};
    EnsembleResult e = run_ensemble(qubit(), m, plus(), grid, 50, 3);
    const auto exact = analytic(qubit(), m, plus(), grid);
    e.mean = exact;
    const ComparisonReport r = compare_to_analytic(e, exact);
    EXPECT_EQ(r.max_z, 0.0);
    EXPECT_EQ(r.fraction_above_3, 0.0);
    ASSERT_TRUE(r.pass.has_value());
    EXPECT_TRUE(*r.pass);
}

TEST(Ensemble, WrongGammaFails) {
    NoiseModel m;
    m.gamma = 0.5;
    const TimeGrid grid{0.0, 4.0, 10};
    const EnsembleResult e = run_ensemble(qubit(), m, plus(), grid, 10000, 11);
    NoiseModel wrong = m;
    wrong.gamma = 1.0;
    const ComparisonReport r = compare_to_analytic(e, analytic(qubit(), wrong, plus(), grid));
    ASSERT_TRUE(r.pass.has_value());
    EXPECT_FALSE(*r.pass);
    EXPECT_GT(r.max_z, 4.0);
}

TEST(Ensemble, SingleTrajectoryHasNoVerdict) {
    NoiseModel m;
    const TimeGrid grid{0.0, 1.0, 2};
    const EnsembleResult e = run_ensemble(qubit(), m, plus(), grid, 1, 3);
    for (const auto& se : e.std_error_re) EXPECT_EQ(se.cwiseAbs().maxCoeff(), 0.0);
    EXPECT_FALSE(compare_to_analytic(e, analytic(qubit(), m, plus(), grid)).pass.has_value());
}

TEST(Ensemble, ThreadCountDoesNotChangeResults) {
    NoiseModel m;
    m.correlation = correlation::Gaussian{1.0};
    std::mt19937_64 rng(15);
    const auto s = eigendecompose(HermitianOperator(testing::random_hermitian(4, rng)));
    const DensityMatrix rho0 = validate_density(testing::random_density(4, rng));
    const TimeGrid grid{0.0, 2.0, 5};
    const EnsembleResult a = run_ensemble(s, m, rho0, grid, 1500, 77, EnsembleOptions{1});
    const EnsembleResult b = run_ensemble(s, m, rho0, grid, 1500, 77, EnsembleOptions{8});
    for (std::size_t i = 0; i < a.times.size(); ++i) {
        EXPECT_EQ(a.mean[i], b.mean[i]);
        EXPECT_EQ(a.std_error_re[i], b.std_error_re[i]);
        EXPECT_EQ(a.std_error_im[i], b.std_error_im[i]);
    }
}

TEST(Ensemble, GridMismatch) {
    NoiseModel m;
    const TimeGrid grid{0.0, 1.0, 4};
    const EnsembleResult e = run_ensemble(qubit(), m, plus(), grid, 10, 3);
    try {
        compare_to_analytic(e, analytic(qubit(), m, plus(), TimeGrid{0.0, 1.0, 3}));
        FAIL();
    } catch (const Error& err) {
        EXPECT_EQ(err.kind(), ErrorKind::GridMismatch);
    }
}

TEST(RandomUnitary, IsUnitaryAndSharesPhasesAcrossDegenerateLevels) {
    const auto s = eigendecompose(HermitianOperator(diag({0.0, 1.0, 1.0, 2.0})));
    ASSERT_EQ(s.level_count(), 3u);
    RealVector chi(3);
    chi << 0.3, -1.7, 4.2;
    const Matrix u = random_unitary(s, chi);
    EXPECT_LT(max_abs_entry(u * u.adjoint() - Matrix::Identity(4, 4)), 1e-12);
    EXPECT_LT(std::abs(u(1, 1) - std::exp(Complex(0.0, 1.7))), 1e-15);
    EXPECT_EQ(u(1, 1), u(2, 2));
    EXPECT_THROW(random_unitary(s, RealVector::Zero(4)), Error);
}

} // namespace
} // namespace idec
