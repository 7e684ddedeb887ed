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

#include "idec/propagator.hpp"

#include <cmath>
#include <sstream>

#include "idec/errors.hpp"

namespace idec {

namespace {

void check_dims(const SpectralDecomposition& s, const Matrix& m) {
    if (m.rows() != s.dim() || m.cols() != s.dim()) {
        std::ostringstream os;
        os << "state is " << m.rows() << "x" << m.cols() << " but the Hamiltonian has dimension "
           << s.dim();
        throw Error(ErrorKind::DimensionMismatch, os.str());
    }
}

// Multiplies each energy-basis entry by its factor and maps back.
Matrix apply_factors(const SpectralDecomposition& s, const Matrix& factors, const Matrix& m) {
    Matrix energy = to_energy_basis(m, s);
    energy.array() *= factors.array();
    return from_energy_basis(energy, s);
}

Matrix averaged_factors(const SpectralDecomposition& s, const NoiseModel& model, double t) {
    const RealMatrix lambda = lambda_levels(model, s.levels, t);
    const Eigen::Index d = s.dim();
    Matrix factors(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
        const auto uk = static_cast<std::size_t>(k);
        const double hk = model.h(s.eigenvalues[uk]);
        for (Eigen::Index l = 0; l < d; ++l) {
            const auto ul = static_cast<std::size_t>(l);
            const double hl = model.h(s.eigenvalues[ul]);
            const double lam = lambda(static_cast<Eigen::Index>(s.level_of[uk]),
                                      static_cast<Eigen::Index>(s.level_of[ul]));
            factors(k, l) = std::exp(Complex(-0.5 * lam, -t * (hk - hl)));
        }
    }
    return factors;
}

PropagatedState finish(Matrix rho) {
    PropagatedState out;
    out.trace = rho.trace().real();
    out.min_eigenvalue = min_hermitian_eigenvalue(rho);
    out.rho = std::move(rho);
    return out;
}

} // namespace

Matrix averaged_map(const SpectralDecomposition& s, const NoiseModel& model, const Matrix& m,
                    double t) {
    if (t < 0.0) throw Error(ErrorKind::InvalidArgument, "averaged evolution needs t >= 0");
    check_dims(s, m);
    return apply_factors(s, averaged_factors(s, model, t), m);
}

PropagatedState averaged_state(const SpectralDecomposition& s, const NoiseModel& model,
                               const DensityMatrix& rho0, double t) {
    model.validate();
    PropagatedState out = finish(averaged_map(s, model, rho0.matrix(), t));
    if (model.direct_lambda && t > 0.0 && model.direct_lambda->rates.diagonal().cwiseAbs().maxCoeff() > 0.0) {
        out.dissipative_trace_loss = true;
    }
    return out;
}

PropagatedState averaged_state_global(const SpectralDecomposition& s, double lambda_t,
                                      const DensityMatrix& rho0, double t) {
    if (t < 0.0) throw Error(ErrorKind::InvalidArgument, "averaged evolution needs t >= 0");
    if (lambda_t < 0.0) throw Error(ErrorKind::InvalidArgument, "lambda(t) must be >= 0");
    check_dims(s, rho0.matrix());
    const Eigen::Index d = s.dim();
    Matrix factors(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
        for (Eigen::Index l = 0; l < d; ++l) {
            const double gap =
                s.eigenvalues[static_cast<std::size_t>(k)] - s.eigenvalues[static_cast<std::size_t>(l)];
            factors(k, l) = std::exp(Complex(-0.5 * lambda_t * gap * gap, -t * gap));
        }
    }
    return finish(apply_factors(s, factors, rho0.matrix()));
}

PropagatedState averaged_state_global(const SpectralDecomposition& s, const NoiseModel& profile,
                                      const DensityMatrix& rho0, double t) {
    profile.validate();
    return averaged_state_global(s, lambda_global(profile, t), rho0, t);
}

DensityMatrix time_averaged_state(std::span<const Matrix> states, std::span<const double> times,
                                  std::span<const double> density) {
    if (states.empty() || states.size() != times.size() || states.size() != density.size()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "time average needs equally many states, times and weights");
    }
    for (double w : density) {
        if (!(w >= 0.0)) throw Error(ErrorKind::WeightsNotNormalized, "negative weight", w);
    }
    std::vector<double> weights(states.size());
    if (states.size() == 1) {
        weights[0] = density[0];
    } else {
        for (std::size_t i = 0; i + 1 < states.size(); ++i) {
            const double h = times[i + 1] - times[i];
            if (!(h > 0.0)) {
                throw Error(ErrorKind::InvalidArgument, "time average needs increasing times");
            }
            weights[i] += 0.5 * h * density[i];
            weights[i + 1] += 0.5 * h * density[i + 1];
        }
    }
    double total = 0.0;
    for (double w : weights) total += w;
    if (std::abs(total - 1.0) > 1e-8) {
        std::ostringstream os;
        os << "weights integrate to " << total;
        throw Error(ErrorKind::WeightsNotNormalized, os.str(), total - 1.0);
    }

    const Eigen::Index d = states[0].rows();
    Matrix acc = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (states[i].rows() != d || states[i].cols() != d) {
            throw Error(ErrorKind::DimensionMismatch, "trajectory states differ in dimension");
        }
        acc += (weights[i] / total) * states[i];
    }
    return validate_density(acc);
}

double semigroup_defect(const SpectralDecomposition& s, const NoiseModel& model,
                        const DensityMatrix& rho0, double t, double sub) {
    if (t < 0.0 || sub < 0.0) throw Error(ErrorKind::InvalidArgument, "semigroup test needs t, s >= 0");
    model.validate();
    const Matrix joint = averaged_map(s, model, rho0.matrix(), t + sub);
    const Matrix composed = averaged_map(s, model, averaged_map(s, model, rho0.matrix(), sub), t);
    return max_abs_entry(joint - composed);
}

} // namespace idec
