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

#include <optional>
#include <variant>
#include <vector>

#include "idec/operators.hpp"

namespace idec {

// Drift h(theta) of the per-level phase process.
namespace drift {
struct Identity {};
struct Affine {
    double a = 1.0;  // slope
    double b = 0.0;  // offset
};
struct Polynomial {
    std::vector<double> coeffs;  // coeffs[i] * theta^i
};
} // namespace drift
using DriftPreset = std::variant<drift::Identity, drift::Affine, drift::Polynomial>;

// Level dependence of the diffusion coefficient.
namespace sigma_level {
struct Constant {
    double c = 0.0;
};
struct Linear {
    double c = 1.0;  // sigma = c * theta
};
struct Polynomial {
    std::vector<double> coeffs;
};
} // namespace sigma_level
using SigmaLevelPreset =
    std::variant<sigma_level::Constant, sigma_level::Linear, sigma_level::Polynomial>;

// Time dependence of the diffusion coefficient.
namespace sigma_time {
struct Constant {};  // identically 1
// values[0] on [0, breakpoints[0]), values[i] on [breakpoints[i-1], breakpoints[i]),
// values.back() after the last breakpoint.
struct PiecewiseConstant {
    std::vector<double> breakpoints;
    std::vector<double> values;
};
} // namespace sigma_time
using SigmaTimePreset = std::variant<sigma_time::Constant, sigma_time::PiecewiseConstant>;

// Correlation g(theta, theta') between the Brownian motions of two levels.
namespace correlation {
struct Uniform {};
struct Gaussian {
    double tau = 0.0;  // exp(-tau^2 (theta - theta')^2)
};
struct Exponential {
    double length = 1.0;  // exp(-|theta - theta'| / length)
};
} // namespace correlation
using CorrelationPreset =
    std::variant<correlation::Uniform, correlation::Gaussian, correlation::Exponential>;

// Explicit lambda(t; theta_i, theta_j) = t * rates(i, j) over the distinct
// levels, bypassing the Brownian construction. `rates` is the accumulated
// variance per unit time; the propagator damps coherences by exp(-lambda/2).
struct DirectLambda {
    RealMatrix rates;
};

// sigma(t; theta) = sqrt(gamma) * sigma_time(t) * sigma_level(theta).
struct NoiseModel {
    DriftPreset drift = drift::Identity{};
    SigmaLevelPreset sigma_level = sigma_level::Linear{};
    SigmaTimePreset sigma_time = sigma_time::Constant{};
    CorrelationPreset correlation = correlation::Uniform{};
    double gamma = 1.0;
    std::optional<DirectLambda> direct_lambda;

    // Throws InvalidArgument on negative gamma / sigma_time values, unsorted
    // breakpoints, or malformed presets.
    void validate() const;

    double h(double theta) const;
    double sigma_of_level(double theta) const;
    double sigma_of_time(double t) const;
    double sigma(double t, double theta) const;
    double g(double theta, double theta_prime) const;

    bool time_independent() const;
    bool brownian() const { return !direct_lambda.has_value(); }

    // Integral of sigma_time(s)^2 over [t0, t1]; exact for the presets.
    double time_variance(double t0, double t1) const;
};

// Variance rate of X_t = int sigma(theta) dB(theta) - int sigma(theta') dB(theta'):
// sigma^2(t;th) g(th,th) + sigma^2(t;th') g(th',th') - 2 sigma(t;th) sigma(t;th') g(th,th').
double eta(const NoiseModel& model, double t, double theta, double theta_prime);

// Accumulated variance lambda(t; theta, theta') = int_0^t eta ds of the
// Brownian construction. Closed form for constant sigma_time; otherwise
// adaptive Simpson at relative tolerance 1e-10 on each interval between
// breakpoints. Ignores direct_lambda (see lambda_levels).
double lambda_pair(const NoiseModel& model, double t, double theta, double theta_prime);

// Single-process scheme chi_t = t + int sigma dB: lambda(t) = gamma * int_0^t sigma_time^2.
double lambda_global(const NoiseModel& model, double t);

// lambda(t; level_i, level_j) for all distinct levels; honors direct_lambda.
RealMatrix lambda_levels(const NoiseModel& model, const std::vector<double>& levels, double t);

// Time-independent rate table lambda(t)/t. Throws Unsupported for
// time-dependent sigma.
RealMatrix lambda_rate_table(const NoiseModel& model, const std::vector<double>& levels);

// Correlation matrix G(i,j) = g(level_i, level_j).
RealMatrix correlation_matrix(const NoiseModel& model, const std::vector<double>& levels);

} // namespace idec
