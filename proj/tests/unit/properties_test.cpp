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

#include <random>

#include "idec/generator.hpp"
#include "idec/metrics.hpp"
#include "idec/propagator.hpp"
#include "test_util.hpp"

namespace idec {
namespace {

// Draws a Brownian-mode model from the preset families.
NoiseModel random_model(std::mt19937_64& rng, bool time_independent) {
    std::uniform_real_distribution<double> u(0.1, 2.0);
    std::uniform_int_distribution<int> pick(0, 2);
    NoiseModel m;
    m.gamma = u(rng);
    switch (pick(rng)) {
        case 0: m.drift = drift::Identity{}; break;
        case 1: m.drift = drift::Affine{u(rng), u(rng) - 1.0}; break;
        default: m.drift = drift::Polynomial{{u(rng), u(rng), -u(rng)}}; break;
    }
    switch (pick(rng)) {
        case 0: m.sigma_level = sigma_level::Linear{u(rng)}; break;
        case 1: m.sigma_level = sigma_level::Constant{u(rng)}; break;
        default: m.sigma_level = sigma_level::Polynomial{{u(rng), -u(rng)}}; break;
    }
    switch (pick(rng)) {
        case 0: m.correlation = correlation::Uniform{}; break;
        case 1: m.correlation = correlation::Gaussian{u(rng)}; break;
        default: m.correlation = correlation::Exponential{u(rng)}; break;
    }
    if (!time_independent) m.sigma_time = sigma_time::PiecewiseConstant{{u(rng)}, {u(rng), u(rng)}};
    return m;
}

class RandomCase : public ::testing::TestWithParam<int> {};

TEST_P(RandomCase, AveragedStateInvariants) {
    std::mt19937_64 rng(1000 + GetParam());
    for (int d = 2; d <= 8; ++d) {
        const Matrix h = testing::random_hermitian(d, rng);
        const auto s = eigendecompose(HermitianOperator(h));
        const DensityMatrix rho0 = validate_density(testing::random_density(d, rng));
        const NoiseModel m = random_model(rng, GetParam() % 2 == 0);
        const double e0 = energy_expectation(rho0.matrix(), h);
        for (double t : {0.25, 1.0, 3.0}) {
            const PropagatedState out = averaged_state(s, m, rho0, t);
            EXPECT_LT(hermiticity_defect(out.rho), 1e-13);
            EXPECT_NEAR(out.trace, 1.0, 1e-12);
            EXPECT_GE(out.min_eigenvalue, -1e-10);
            EXPECT_NEAR(energy_expectation(out.rho, h), e0, 1e-10);
            EXPECT_LE(trace_distance(out.rho, rho0.matrix()), 1.0 + 1e-12);
        }
        if (m.time_independent()) EXPECT_LT(semigroup_defect(s, m, rho0, 0.7, 1.1), 1e-12);
    }
}

TEST_P(RandomCase, GeneratorInvariants) {
    std::mt19937_64 rng(2000 + GetParam());
    std::uniform_real_distribution<double> u(0.1, 2.0);
    for (int d = 2; d <= 8; ++d) {
        const auto s = eigendecompose(HermitianOperator(testing::random_hermitian(d, rng)));
        const DensityMatrix rho0 = validate_density(testing::random_density(d, rng));
        const double gamma = u(rng), tau = u(rng);
        for (const Superoperator& g : {build_phase_destroying(s, gamma), build_correlated(s, gamma, tau)}) {
            EXPECT_LT(max_abs_entry(g.rates - Matrix(g.rates.adjoint())), 1e-15);
            for (Eigen::Index k = 0; k < d; ++k) EXPECT_EQ(g.rates(k, k), Complex(0.0, 0.0));
            EXPECT_TRUE(cp_report(g, {0.1, 1.0, 10.0}).completely_positive());
            // Unitality on the materialized identity.
            const Matrix id = Matrix::Identity(d, d);
            const Matrix image = from_energy_basis(g.propagator_factors(2.0).cwiseProduct(to_energy_basis(id, s)), s);
            EXPECT_LT(max_abs_entry(image - id), 1e-10);
        }
        // Correlated generator equals the closed-form averaged state.
        NoiseModel m;
        m.gamma = gamma;
        m.correlation = correlation::Gaussian{tau};
        const TimeGrid grid{0.0, 2.0, 4};
        const EvolutionResult me = integrate(build_correlated(s, gamma, tau), rho0, grid);
        for (std::size_t i = 0; i < me.times.size(); ++i) {
            EXPECT_LT(max_abs_entry(me.states[i] - averaged_state(s, m, rho0, me.times[i]).rho), 1e-8);
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomCase, ::testing::Range(0, 6));

} // namespace
} // namespace idec
