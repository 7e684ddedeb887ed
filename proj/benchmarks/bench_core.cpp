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

#include <benchmark/benchmark.h>

#include <random>

#include "idec/generator.hpp"
#include "idec/montecarlo.hpp"
#include "idec/propagator.hpp"

namespace {

using namespace idec;

Matrix random_hermitian(Eigen::Index d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n;
    Matrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = Complex(n(rng), n(rng));
    }
    return 0.5 * (m + m.adjoint());
}

DensityMatrix uniform_superposition(Eigen::Index d) {
    return validate_density(Matrix::Constant(d, d, Complex(1.0 / static_cast<double>(d), 0.0)));
}

NoiseModel gaussian_noise() {
    NoiseModel m;
    m.gamma = 0.4;
    m.correlation = correlation::Gaussian{1.0};
    return m;
}

void BM_Eigendecompose(benchmark::State& state) {
    const HermitianOperator h(random_hermitian(state.range(0), 1));
    for (auto _ : state) benchmark::DoNotOptimize(eigendecompose(h));
}
BENCHMARK(BM_Eigendecompose)->RangeMultiplier(2)->Range(2, 16);

void BM_AveragedState(benchmark::State& state) {
    const Eigen::Index d = state.range(0);
    const auto s = eigendecompose(HermitianOperator(random_hermitian(d, 2)));
    const DensityMatrix rho0 = uniform_superposition(d);
    const NoiseModel m = gaussian_noise();
    for (auto _ : state) benchmark::DoNotOptimize(averaged_state(s, m, rho0, 1.5));
}
BENCHMARK(BM_AveragedState)->RangeMultiplier(2)->Range(2, 16);

void BM_ChoiReport(benchmark::State& state) {
    const Eigen::Index d = state.range(0);
    const Superoperator g = build_correlated(eigendecompose(HermitianOperator(random_hermitian(d, 3))), 0.4, 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(cp_report(g, {1.0}));
}
BENCHMARK(BM_ChoiReport)->RangeMultiplier(2)->Range(2, 8);

void BM_Ensemble(benchmark::State& state) {
    const auto s = eigendecompose(HermitianOperator(random_hermitian(4, 4)));
    const DensityMatrix rho0 = uniform_superposition(4);
    const NoiseModel m = gaussian_noise();
    const TimeGrid grid{0.0, 2.0, 10};
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run_ensemble(s, m, rho0, grid, n, 1));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_Ensemble)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
